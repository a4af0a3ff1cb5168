mod common;

use common::{lab, tree};
use treeshell::sorter::{check_confluence, Strategy, WeakOrder, DEFAULT_LABELLING_BOUND};
use treeshell::{CapacityTree, Engine, Labelling, Vertex};

#[test]
fn local_steps_on_paths() {
    let t = CapacityTree::path(&[1, 1]);
    let e = Engine::new(&t);
    let s = lab(&t, &[&[2], &[1]]);
    assert_eq!(e.local_sort_step(&s, Vertex(0), Vertex(1)).unwrap(), Labelling::sorted(&t));

    let t = CapacityTree::path(&[1, 1, 1]);
    let e = Engine::new(&t);
    let s = lab(&t, &[&[3], &[1], &[2]]);
    assert_eq!(e.local_sort_step(&s, Vertex(0), Vertex(1)).unwrap(), lab(&t, &[&[1], &[3], &[2]]));
    assert!(e.local_sort_step(&s, Vertex(1), Vertex(2)).is_err());
    assert!(e.local_sort_step(&s, Vertex(0), Vertex(2)).is_err());
}

#[test]
fn hub_steps_match_oracle() {
    let t = tree("hub_cap2_star");
    let e = Engine::new(&t);
    for s in Labelling::enumerate(&t) {
        for (p, c) in e.neighbor_inversions(&s) {
            let brute = e.redistributions_brute(&s, p, c);
            assert_eq!(vec![e.local_sort_step(&s, p, c).unwrap()], brute);
        }
    }
}

#[test]
fn greedy_sorting() {
    let t = CapacityTree::path(&[1, 1, 1]);
    let e = Engine::new(&t);
    let sorted = Labelling::sorted(&t);
    assert_eq!(e.greedy_sort(&sorted, Strategy::First).unwrap().step_count(), 0);
    let rev = lab(&t, &[&[3], &[2], &[1]]);
    let tr = e.greedy_sort(&rev, Strategy::First).unwrap();
    assert_eq!((tr.step_count(), &tr.terminal), (3, &sorted));

    let t = tree("hub_cap2_star");
    let e = Engine::new(&t);
    let all = Labelling::enumerate(&t);
    assert_eq!(all.len(), 60);
    for s in &all {
        for st in [Strategy::First, Strategy::Random(9), Strategy::LargestPotentialDrop] {
            assert!(e.greedy_sort(s, st).unwrap().terminal.is_sorted(&t));
        }
    }
}

#[test]
fn trace_format_is_stable() {
    let t = CapacityTree::path(&[1, 1]);
    let e = Engine::new(&t);
    let tr = e.greedy_sort(&lab(&t, &[&[2], &[1]]), Strategy::First).unwrap();
    assert_eq!(tr.render(&t), "start: v1:2 v2:1\nstrategy: first\nstep 1: swap (v1,v2) -> v1:1 v2:2\nterminal: v1:1 v2:2\n");
    assert_eq!("random(4)".parse::<Strategy>().unwrap(), Strategy::Random(4));
    assert!("bogus".parse::<Strategy>().is_err());
}

#[test]
fn weak_orders() {
    let t = CapacityTree::path(&[1, 1, 1]);
    let w = WeakOrder::build(&Engine::new(&t), DEFAULT_LABELLING_BOUND).unwrap();
    assert_eq!((w.len(), w.arc_count(), w.sinks().len(), w.sources().len()), (6, 6, 1, 1));

    let t = CapacityTree::path(&[1, 1]);
    let w = WeakOrder::build(&Engine::new(&t), DEFAULT_LABELLING_BOUND).unwrap();
    assert_eq!((w.len(), w.arc_count()), (2, 1));
    assert!(w.to_dot(&t).starts_with("digraph"));

    let t = tree("hub_cap2_star");
    let w = WeakOrder::build(&Engine::new(&t), DEFAULT_LABELLING_BOUND).unwrap();
    assert!(w.is_acyclic());
    assert_eq!(w.sinks().len(), 1);
    assert!(w.nodes[w.sinks()[0]].is_sorted(&t));
    assert!(WeakOrder::build(&Engine::new(&t), 10).is_err());
}

#[test]
fn linear_extensions_put_sorted_first() {
    let t = tree("spider");
    let w = WeakOrder::build(&Engine::new(&t), DEFAULT_LABELLING_BOUND).unwrap();
    for seed in [None, Some(1), Some(2)] {
        let ext = w.linear_extension(&t, seed).unwrap();
        assert!(w.nodes[ext[0]].is_sorted(&t));
        let pos: Vec<usize> = {
            let mut p = vec![0; ext.len()];
            for (i, &x) in ext.iter().enumerate() {
                p[x] = i;
            }
            p
        };
        assert!(w.covers().all(|(upper, lower)| pos[lower] < pos[upper]));
    }
}

#[test]
fn confluence() {
    let hub = tree("hub_cap2_star");
    let r = check_confluence(&Engine::new(&hub), DEFAULT_LABELLING_BOUND, true).unwrap();
    assert!(r.ok());
    assert_eq!(r.labellings, 60);
    let single = CapacityTree::parse("node x parent=- cap=2").unwrap();
    assert!(check_confluence(&Engine::new(&single), DEFAULT_LABELLING_BOUND, true).unwrap().ok());
}

#[test]
fn subtree_restriction_gap() {
    // Two labels bound for the same hub, which is full of labels that are
    // only passing through: the restricted order has two sinks.
    let t = tree("long_handle_star");
    let r = check_confluence(&Engine::new(&t), DEFAULT_LABELLING_BOUND, true).unwrap();
    let f = r.failure.expect("restricted order is confluent");
    assert_eq!(
        f.render(&t),
        "restricted to {c,a,b}: 2 terminal labellings: r:5 u:6 c:1,2 a:3 b:4 | r:5 u:6 c:1,2 a:4 b:3"
    );
    assert!(check_confluence(&Engine::new(&t), DEFAULT_LABELLING_BOUND, false).unwrap().ok());
}

#[test]
fn potential_values() {
    let t = CapacityTree::path(&[1, 1]);
    let e = Engine::new(&t);
    assert_eq!(e.potential(&Labelling::sorted(&t)).unwrap(), 0);
    assert_eq!(e.potential(&lab(&t, &[&[2], &[1]])).unwrap(), 1);
    let t = CapacityTree::path(&[1, 1, 1]);
    let e = Engine::new(&t);
    assert_eq!(e.potential(&lab(&t, &[&[3], &[2], &[1]])).unwrap(), 4);
}

#[test]
fn potential_strict_on_unit_paths() {
    for n in 2..=5 {
        let t = CapacityTree::path(&vec![1; n]);
        let e = Engine::new(&t);
        let w = WeakOrder::build(&e, DEFAULT_LABELLING_BOUND).unwrap();
        let f: Vec<u64> = w.nodes.iter().map(|s| e.potential(s).unwrap()).collect();
        assert!(w.covers().all(|(u, l)| f[l] < f[u]));
    }
}

#[test]
fn potential_plateau() {
    // Both labellings carry f = 3 although one sorts to the other.
    let t = CapacityTree::path(&[2, 1, 1]);
    let e = Engine::new(&t);
    let s = lab(&t, &[&[3, 4], &[1], &[2]]);
    let next = e.local_sort_step(&s, Vertex(0), Vertex(1)).unwrap();
    assert_eq!(next, lab(&t, &[&[1, 3], &[4], &[2]]));
    assert_eq!((e.potential(&s).unwrap(), e.potential(&next).unwrap()), (3, 3));
}
