mod common;

use common::{lab, read, tree};
use itertools::Itertools;
use treeshell::inversion::{edge_priority_higher, Coarsening};
use treeshell::{CapacityTree, Engine, Label, Labelling, Rule, Vertex};

fn v(t: &CapacityTree, name: &str) -> Vertex {
    t.vertex_by_name(name).unwrap()
}

fn fan(children: usize) -> CapacityTree {
    let mut text = "node p parent=- cap=1\nnode u parent=p cap=3\n".to_string();
    for i in 0..children {
        text.push_str(&format!("node k{i} parent=u cap=1\n"));
    }
    CapacityTree::parse(&text).unwrap()
}

#[test]
fn coarsening_levels() {
    let t = fan(1);
    assert_eq!(Coarsening::new(&t, v(&t, "u")).depth(), 0);

    let t = fan(2);
    let c = Coarsening::new(&t, v(&t, "u"));
    assert_eq!(c.depth(), 1);
    let parts: Vec<_> = t.vertices().map(|x| c.part(0, x)).collect();
    assert_eq!(parts, [Some(2), Some(2), Some(1), Some(2)]);

    let t = fan(3);
    let c = Coarsening::new(&t, v(&t, "u"));
    let parts: Vec<_> = t.vertices().map(|x| c.part(0, x)).collect();
    assert_eq!(parts, [Some(2), Some(2), Some(1), Some(2), Some(3)]);
    assert_eq!(c.depth(), 1);
    assert_eq!(c.path_distance(0, v(&t, "k0"), v(&t, "k2")).unwrap(), 2);
    assert_eq!(c.path_distance(0, v(&t, "p"), v(&t, "k0")).unwrap(), 1);
    assert_eq!(c.path_distance(0, v(&t, "p"), v(&t, "k1")).unwrap(), 0);
}

#[test]
fn edge_priorities() {
    let t = fan(3);
    let u = v(&t, "u");
    let c = Coarsening::new(&t, u);
    assert!(edge_priority_higher(&t, &c, v(&t, "k0"), v(&t, "k1")).unwrap());
    assert!(!edge_priority_higher(&t, &c, v(&t, "k1"), v(&t, "k0")).unwrap());
    assert!(edge_priority_higher(&t, &c, v(&t, "k0"), v(&t, "k0")).is_err());

    let p = CapacityTree::path(&[1, 1, 1]);
    let mid = Coarsening::new(&p, Vertex(1));
    assert!(edge_priority_higher(&p, &mid, Vertex(0), Vertex(2)).unwrap());
}

#[test]
fn channels() {
    let t = tree("hub_cap2_star");
    let e = Engine::new(&t);
    assert_eq!(e.capacity_channels(v(&t, "c")).len(), 3);
    assert_eq!(e.capacity_channels(v(&t, "a")).len(), 1);
}

#[test]
fn prioritization() {
    let t = tree("hub_cap2_star");
    let e = Engine::new(&t);
    let c = v(&t, "c");
    assert_eq!(e.prioritize_at(c, &[4]), [4]);
    // 4 leaves through the first child, 5 through the last.
    assert_eq!(e.prioritize_at(c, &[5, 4]), [4, 5]);
    // 2 stops at c and ranks after a label that still has to leave.
    assert_eq!(e.prioritize_at(c, &[2, 5]), [5, 2]);
}

#[test]
fn path_inversions() {
    let t = CapacityTree::path(&[1, 1]);
    let e = Engine::new(&t);
    let s = lab(&t, &[&[2], &[1]]);
    let r = e.label_inversions(&s);
    assert!(r.label_pairs.iter().all(|p| p.rule == Rule::E1));
    assert!(r.label_pairs.iter().any(|p| (p.li, p.lj) == (2, 1)));
    assert_eq!(e.node_inversions(&s), [(Vertex(0), Vertex(1))]);
    let sorted = Labelling::sorted(&t);
    assert_eq!(e.label_inversions(&sorted), Default::default());
    assert!(e.node_inversions(&sorted).is_empty());
}

#[test]
fn sorted_labellings_are_free() {
    for name in ["hub_cap2_star", "spider", "two_hubs", "heavy_ends", "ten_vertex"] {
        let t = tree(name);
        let e = Engine::new(&t);
        assert!(e.label_inversions(&Labelling::sorted(&t)).label_pairs.is_empty(), "{name}");
    }
}

#[test]
fn ten_vertex_pairs() {
    let t = tree("ten_vertex");
    let s = Labelling::parse(&read("ten_vertex.lab"), &t).unwrap();
    let e = Engine::new(&t);
    let r = e.label_inversions(&s);
    let neighbours: Vec<(&str, &str)> = r.neighbor_pairs().map(|p| (t.name(p.a), t.name(p.b))).collect();
    assert_eq!(neighbours, [("v1", "v2"), ("v2", "v3"), ("v6", "v7")]);
    for p in r.neighbor_pairs() {
        let e1 = r.label_pairs.iter().any(|l| l.rule == Rule::E1 && [l.vi, l.vj].contains(&p.a) && [l.vi, l.vj].contains(&p.b));
        assert!(e1, "{} {}", t.name(p.a), t.name(p.b));
    }
    assert!(e.free_among(s.slots(), &[v(&t, "v2"), v(&t, "v6"), v(&t, "v9")]));
}

#[test]
fn redistribution_examples() {
    let t = CapacityTree::path(&[1, 1]);
    let e = Engine::new(&t);
    let s = lab(&t, &[&[2], &[1]]);
    assert_eq!(e.unique_redistribution(&s, Vertex(0), Vertex(1)).unwrap(), Labelling::sorted(&t));
    let sorted = Labelling::sorted(&t);
    assert_eq!(e.unique_redistribution(&sorted, Vertex(0), Vertex(1)).unwrap(), sorted);

    let t = tree("hub_cap2_star");
    let e = Engine::new(&t);
    let s = lab(&t, &[&[3], &[1, 4], &[2], &[5]]);
    let (c, a) = (v(&t, "c"), v(&t, "a"));
    let brute = e.redistributions_brute(&s, c, a);
    assert_eq!(brute.len(), 1);
    let r = e.unique_redistribution(&s, c, a).unwrap();
    assert_eq!(r, brute[0]);
    assert_eq!(r.at(a), [4]);
}

#[test]
fn base_labelling_examples() {
    let t = tree("spider");
    let e = Engine::new(&t);
    let all: Vec<Vertex> = t.vertices().collect();
    let labels: Vec<Label> = (1..=t.total_capacity()).collect();
    assert_eq!(e.base_labelling(&all, &labels).unwrap(), Labelling::sorted(&t).slots());
    let c = v(&t, "c");
    let base = e.base_labelling(&[c], &[2, 6]).unwrap();
    assert_eq!(base[c.0], [2, 6]);
}

#[test]
fn component_base_labelling() {
    let t = tree("ten_vertex");
    let given = Labelling::parse_partial(&read("ten_vertex_component.lab"), &t).unwrap();
    let comp: Vec<Vertex> = given.keys().copied().collect();
    let labels: Vec<Label> = given.values().flatten().copied().sorted().collect();
    let e = Engine::new(&t);
    let base = e.base_labelling(&comp, &labels).unwrap();
    for (x, want) in &given {
        assert_eq!(base[x.0].iter().sorted().collect::<Vec<_>>(), want.iter().sorted().collect::<Vec<_>>());
    }
    // Labels 1, 5 and 10 are destined outside the component.
    let away: Vec<Label> = labels.iter().copied().filter(|&l| !comp.contains(&e.dest(l))).collect();
    assert_eq!(away, [1, 5, 10]);
    assert_eq!(e.inversion_free_brute(&comp, &labels).len(), 1);
}
