use num_bigint::BigInt;
use proptest::prelude::*;
use treeshell::enumerate::shape_tree;
use treeshell::homology::{smith_normal_form, SparseMatrix};
use treeshell::sorter::Strategy as SortStrategy;
use treeshell::{CapacityTree, Engine, Labelling};

fn arb_tree(max_vertices: usize, max_cap: u32) -> impl Strategy<Value = CapacityTree> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            let parents: Vec<_> = (1..n).map(|i| (0..i).boxed()).collect();
            (parents, prop::collection::vec(0..=max_cap, n))
        })
        .prop_filter_map("total capacity must be positive", |(parents, caps)| {
            let shape: Vec<Option<usize>> = std::iter::once(None).chain(parents.into_iter().map(Some)).collect();
            (caps.iter().sum::<u32>() > 0).then(|| shape_tree(&shape, &caps))
        })
}

fn arb_labelling(t: CapacityTree) -> impl Strategy<Value = (CapacityTree, Labelling)> {
    Just(t.destinations()).prop_shuffle().prop_map(move |pos| {
        let l = Labelling::from_positions(&t, &pos).unwrap();
        (t.clone(), l)
    })
}

fn det(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            BigInt::from(sign * m[0][j]) * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

proptest! {
    #[test]
    fn tree_text_round_trips(t in arb_tree(8, 3)) {
        prop_assert_eq!(CapacityTree::parse(&t.to_ctree()).unwrap(), t);
    }

    #[test]
    fn labelling_text_round_trips((t, l) in arb_tree(6, 2).prop_flat_map(arb_labelling)) {
        prop_assert_eq!(Labelling::parse(&l.render(&t), &t).unwrap(), l);
    }

    #[test]
    fn greedy_sorting_reaches_the_sorted_labelling(
        (t, l) in arb_tree(5, 2)
            .prop_filter("distributable", |t| t.is_distributable() && t.total_capacity() <= 6)
            .prop_flat_map(arb_labelling),
        seed in any::<u64>(),
    ) {
        let e = Engine::new(&t);
        for st in [SortStrategy::First, SortStrategy::Random(seed), SortStrategy::LargestPotentialDrop] {
            let tr = e.greedy_sort(&l, st).unwrap();
            prop_assert!(tr.terminal.is_sorted(&t));
            prop_assert!(tr.step_count() as u64 <= e.potential(&l).unwrap());
        }
    }

    #[test]
    fn invariant_factors_divide_and_multiply_to_det(
        m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))
    ) {
        let f = smith_normal_form(&SparseMatrix::from_dense(&m));
        for w in f.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        let d = det(&m);
        if d != BigInt::from(0) {
            prop_assert_eq!(f.len(), m.len());
            prop_assert_eq!(f.iter().product::<BigInt>(), if d < BigInt::from(0) { -d } else { d });
        }
        let g = m.iter().flatten().fold(0, |a, &b| gcd(a, b));
        if g != 0 {
            prop_assert_eq!(f[0].clone(), BigInt::from(g));
        }
    }
}
