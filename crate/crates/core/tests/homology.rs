mod common;

use num_bigint::BigInt;
use treeshell::complex::{all_faces, chessboard_tree, DEFAULT_FACE_BOUND};
use treeshell::enumerate::unit_trees_with_leaf_root;
use treeshell::homology::*;
use treeshell::CapacityTree;

fn snf(rows: &[Vec<i64>]) -> Vec<BigInt> {
    smith_normal_form(&SparseMatrix::from_dense(rows))
}

#[test]
fn smith_normal_forms() {
    assert_eq!(snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), [1, 1, 1].map(BigInt::from));
    assert_eq!(snf(&[vec![2, 0], vec![0, 0]]), [BigInt::from(2)]);
    assert_eq!(snf(&[vec![4, 6], vec![6, 9]]), [BigInt::from(1)]);
}

#[test]
fn large_entries_stay_exact() {
    let big = i64::MAX / 2;
    let f = snf(&[vec![big, 2], vec![2, big]]);
    let det = BigInt::from(big) * big - 4;
    assert_eq!(f.iter().product::<BigInt>(), det);
}

#[test]
fn hexagon_boundaries() {
    let t = chessboard_tree(2, 3).unwrap();
    let faces = all_faces(&t, None, DEFAULT_FACE_BOUND).unwrap();
    let b = boundary_matrices(&t, &faces).unwrap();
    assert_eq!((b[1].rows, b[1].cols), (6, 6));
    assert!(b[1].columns.iter().all(|c| c.len() == 2 && c.iter().all(|&(_, x)| x.abs() == 1)));
    let h = reduced_homology(&t, None, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(h.render(), "H~_0 = 0\nH~_1 = Z^1\n");
    assert_eq!(h.render_machine(), "-1,0,\n0,0,\n1,1,\n");
}

#[test]
fn simplex_and_two_points() {
    let h = reduced_homology(&CapacityTree::path(&[1, 1]), None, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(h.group(0).unwrap().betti, 1);
    // The empty second vertex leaves a single facet, a point.
    let h = reduced_homology(&CapacityTree::path(&[2, 0]), None, DEFAULT_FACE_BOUND).unwrap();
    assert!(h.groups.iter().all(|g| g.is_zero()));
}

#[test]
fn chessboard_m34_is_a_torus() {
    let h = reduced_homology(&chessboard_tree(3, 4).unwrap(), None, DEFAULT_FACE_BOUND).unwrap();
    assert!(h.boundary_squares_vanish() && h.euler_characteristic_matches());
    assert_eq!(h.render(), "H~_0 = 0\nH~_1 = Z^2\nH~_2 = Z^1\n");
}

#[test]
fn three_torsion_appears_in_larger_boards() {
    let h = reduced_homology(&chessboard_tree(5, 5).unwrap(), None, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(h.group(2).unwrap().to_string(), "H~_2 = Z/3");
    let h = reduced_homology(&chessboard_tree(6, 7).unwrap(), None, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(h.group(3).unwrap().to_string(), "H~_3 = Z/3");
}

#[test]
fn nu_bound_on_small_boards() {
    assert_eq!((nu(2, 3), nu(3, 4), nu(1, 1)), (1, 1, 0));
    for m in 1..=3 {
        for n in m..=6 {
            let h = reduced_homology(&chessboard_tree(m, n).unwrap(), None, DEFAULT_FACE_BOUND).unwrap();
            assert!(h.vanishes_through(nu(m, n) as isize - 1), "M_{{{m},{n}}}");
            assert!(h.boundary_squares_vanish() && h.euler_characteristic_matches());
        }
    }
}

#[test]
fn connectivity_of_unit_trees() {
    assert!(verify_connectivity_consequence(&CapacityTree::path(&[1, 1, 1]), DEFAULT_FACE_BOUND).unwrap());
    assert!(verify_connectivity_consequence(&chessboard_tree(3, 4).unwrap(), DEFAULT_FACE_BOUND).unwrap());
    for n in 2..=5 {
        for t in unit_trees_with_leaf_root(n) {
            assert!(verify_connectivity_consequence(&t, DEFAULT_FACE_BOUND).unwrap(), "{t}");
        }
    }
}

#[test]
fn obstruction_reports() {
    let r = sorting_obstruction_report(3, 4, DEFAULT_FACE_BOUND).unwrap();
    assert!(!r.distributable);
    assert_eq!(r.obstruction, Some(Obstruction::LowHomology { degree: 1 }));
    assert!(r.torsion(1).is_empty());
    assert!(r.render().contains("=> no greedy sorting by local steps"));

    let r = sorting_obstruction_report(2, 3, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(r.obstruction, None);

    let r = sorting_obstruction_report(2, 2, DEFAULT_FACE_BOUND).unwrap();
    assert_eq!(r.obstruction, Some(Obstruction::LowHomology { degree: 0 }));
}

#[test]
fn face_bound_is_enforced() {
    assert!(reduced_homology(&chessboard_tree(3, 4).unwrap(), None, 5).is_err());
}
