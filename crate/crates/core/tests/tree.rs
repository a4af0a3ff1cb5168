mod common;

use common::{star, tree};
use treeshell::enumerate::{distributable_trees, unit_trees_with_leaf_root};
use treeshell::{CapacityTree, EdgeSet, Error, Vertex};

fn names(t: &CapacityTree, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vs.into_iter().map(|v| t.name(v).to_string()).collect()
}

#[test]
fn parse_examples() {
    let t = tree("hub_cap2_star");
    assert_eq!((t.len(), t.name(t.root()), t.total_capacity()), (4, "r", 5));
    let one = CapacityTree::parse("node x parent=- cap=3").unwrap();
    assert_eq!((one.len(), one.total_capacity()), (1, 3));
    let two_roots = CapacityTree::parse("node a parent=- cap=1\nnode b parent=- cap=1\n");
    assert!(matches!(two_roots, Err(Error::Input(_))));
    assert!(CapacityTree::parse("node a parent=- cap=1\nnode b parent=z cap=1\n").is_err());
    assert!(CapacityTree::parse("node a parent=- cap=-1\n").is_err());
    assert!(CapacityTree::parse("node a parent=- cap=0\n").is_err());
}

#[test]
fn round_trip() {
    let t = tree("ten_vertex");
    assert_eq!(CapacityTree::parse(&t.to_ctree()).unwrap(), t);
}

#[test]
fn dfs_and_destinations() {
    let t = tree("hub_cap2_star");
    assert_eq!(names(&t, t.dfs_order()), ["r", "c", "a", "b"]);
    assert_eq!(names(&t, t.destinations()), ["r", "c", "c", "a", "b"]);
    let p = tree("path_1_1_1");
    assert_eq!(names(&p, p.destinations()), ["v1", "v2", "v3"]);
    let z = CapacityTree::parse("node r parent=- cap=0\nnode c parent=r cap=2\n").unwrap();
    assert_eq!(names(&z, z.destinations()), ["c", "c"]);
}

#[test]
fn derived_trees() {
    let t = star(3, 3);
    let one = EdgeSet::parse("l0", &t).unwrap();
    let d = t.derive(&one).tree;
    let mut caps: Vec<u32> = d.vertices().map(|v| d.cap(v)).collect();
    caps.sort();
    assert_eq!((d.len(), caps), (2, vec![1, 5]));
    let all = t.derive(&t.all_edges()).tree;
    assert_eq!(all.len(), 4);
    assert_eq!(all.vertices().map(|v| all.cap(v)).collect::<Vec<_>>(), [3, 1, 1, 1]);
    let none = t.derive(&EdgeSet::new()).tree;
    assert_eq!((none.len(), none.total_capacity()), (1, 6));
}

#[test]
fn distributability() {
    assert!(star(2, 3).is_distributable());
    assert!(!star(1, 3).is_distributable());
    // A lone vertex has degree 0, but total capacity must be positive.
    assert!(CapacityTree::parse("node x parent=- cap=0").is_err());
    assert!(CapacityTree::parse("node x parent=- cap=1").unwrap().is_distributable());
    assert!(star(0, 1).is_distributable());
}

#[test]
fn merge_closure() {
    assert!(star(2, 3).check_merge_closure().unwrap());
    assert!(CapacityTree::path(&[1, 1]).check_merge_closure().unwrap());
    for t in distributable_trees(5, 8, 3) {
        assert!(t.check_merge_closure().unwrap(), "{t}");
    }
}

#[test]
fn first_children_edges() {
    let p = tree("path_1_1_1");
    assert_eq!(p.first_children_edges().unwrap().display(&p), "v2,v3");
    let s = tree("hub_cap2_star");
    assert_eq!(s.first_children_edges().unwrap().display(&s), "c,a");
    let e = CapacityTree::path(&[1, 1]);
    assert_eq!(e.first_children_edges().unwrap().len(), 1);
    assert!(star(2, 3).first_children_edges().is_err());
}

#[test]
fn half_degree_edges() {
    let hub = tree("hub6");
    let e = hub.half_degree_edges().unwrap();
    assert_eq!(e.display(&hub), "c,a,b");
    assert_eq!(e.len() - 1, hub.half_degree_index());
    let p = tree("path_1_1_1");
    assert_eq!(p.half_degree_edges().unwrap().display(&p), "v2");
    let s = CapacityTree::parse("node r parent=- cap=1\nnode c parent=r cap=1\nnode a parent=c cap=1\nnode b parent=c cap=1\n").unwrap();
    assert_eq!(s.half_degree_edges().unwrap().display(&s), "c,a");
}

#[test]
fn edge_set_validation() {
    for n in 2..=6 {
        for t in unit_trees_with_leaf_root(n) {
            assert!(t.validate_edge_set(&t.first_children_edges().unwrap()), "{t}");
            assert!(t.validate_edge_set(&EdgeSet::new()));
        }
    }
    let z = star(0, 3);
    assert!(!z.validate_edge_set(&EdgeSet::parse("l0,l1", &z).unwrap()));
}

#[test]
fn half_degree_hub_witness() {
    let hub = tree("hub6");
    let w = hub.edge_set_violation(&hub.half_degree_edges().unwrap()).unwrap();
    assert_eq!(w.removed.display(&hub), "d,e,f");
    assert_eq!(names(&hub, w.component), ["r", "c", "a", "b"]);
    let handle = tree("hub6_handle");
    assert!(handle.validate_edge_set(&handle.half_degree_edges().unwrap()));
}
