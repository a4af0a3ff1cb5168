//! Inversion pairs of the ten-vertex labelling and the base-labelling of a
//! component.

use itertools::Itertools;
use treeshell::{CapacityTree, Engine, Label, Labelling, Vertex};

fn main() -> treeshell::Result<()> {
    let t = CapacityTree::parse(include_str!("../fixtures/ten_vertex.ctree"))?;
    let sigma = Labelling::parse(include_str!("../fixtures/ten_vertex.lab"), &t)?;
    let e = Engine::new(&t);
    println!("labelling {}", sigma.compact(&t));
    print!("{}", e.label_inversions(&sigma).render(&t));

    let given = Labelling::parse_partial(include_str!("../fixtures/ten_vertex_component.lab"), &t)?;
    let component: Vec<Vertex> = given.keys().copied().collect();
    let labels: Vec<Label> = given.values().flatten().copied().sorted().collect();
    let base = e.base_labelling(&component, &labels)?;
    println!("base-labelling of {{{}}}:", component.iter().map(|&v| t.name(v)).join(","));
    for &v in &component {
        println!("  {} = {{{}}}", t.name(v), base[v.0].iter().join(","));
    }
    let brute = e.inversion_free_brute(&component, &labels);
    println!("inversion-free placements by enumeration: {}", brute.len());
    Ok(())
}
