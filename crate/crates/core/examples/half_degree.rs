//! Half-degree edge sets on two trees with a degree-6 hub.

use treeshell::complex::{shelling_order, verify_shelling};
use treeshell::homology::reduced_homology;
use treeshell::CapacityTree;

const BOUND: usize = 1_000_000;

fn main() -> treeshell::Result<()> {
    let fixtures = [
        ("hub next to the root", include_str!("../fixtures/hub6.ctree")),
        ("hub behind a handle", include_str!("../fixtures/hub6_handle.ctree")),
    ];
    for (name, src) in fixtures {
        let t = CapacityTree::parse(src)?;
        let e = t.half_degree_edges()?;
        println!("{name}: E = {{{}}}, |E|-1 = {}, index = {}", e.display(&t), e.len() - 1, t.half_degree_index());
        if let Some(w) = t.edge_set_violation(&e) {
            let comp: Vec<&str> = w.component.iter().map(|&v| t.name(v)).collect();
            println!("  hypothesis fails: component {{{}}} after removing {{{}}}", comp.join(","), w.removed.display(&t));
            continue;
        }
        let cert = shelling_order(&t, &e, None, BOUND)?;
        let ok = verify_shelling(&cert).is_none();
        let h = reduced_homology(&t, Some(e.len() - 1), BOUND)?;
        println!("  {} facets, shelling verified={ok}, spheres={}", cert.len(), cert.spanning_count());
        print!("{}", h.render());
    }
    Ok(())
}
