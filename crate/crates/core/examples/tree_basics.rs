//! Destinations, derived trees and the edge sets that select skeleta.

use treeshell::{CapacityTree, EdgeSet};

fn main() -> treeshell::Result<()> {
    let t = CapacityTree::parse(include_str!("../fixtures/ten_vertex.ctree"))?;
    println!("{} vertices, {} labels, distributable={}", t.len(), t.total_capacity(), t.is_distributable());
    for (i, v) in t.destinations().into_iter().enumerate() {
        println!("  dest({}) = {}", i + 1, t.name(v));
    }

    let kept = EdgeSet::parse("v3,v6", &t)?;
    let d = t.derive(&kept);
    println!("derived tree of ({{v3,v6}}):");
    print!("{}", d.tree);
    for (i, m) in d.members.iter().enumerate() {
        let names: Vec<&str> = m.iter().map(|&v| t.name(v)).collect();
        println!("  {} = {{{}}}", d.tree.name(treeshell::Vertex(i)), names.join(","));
    }

    let unit = CapacityTree::parse(include_str!("../fixtures/path6.ctree"))?;
    let fc = unit.first_children_edges()?;
    println!(
        "path6 first-children edges {} valid={}",
        fc.display(&unit),
        unit.validate_edge_set(&fc)
    );
    Ok(())
}
