//! Shelling certificates for a full complex and a skeleton, checked by
//! brute force, and a tree where the skeleton order breaks.

use treeshell::complex::{shell_full_distributable, shelling_order, verify_shelling, DEFAULT_FACE_BOUND};
use treeshell::CapacityTree;

fn report(name: &str, src: &str, full: bool) -> treeshell::Result<()> {
    let t = CapacityTree::parse(src)?;
    let cert = if full {
        shell_full_distributable(&t, Some(1), DEFAULT_FACE_BOUND)?
    } else {
        shelling_order(&t, &t.first_children_edges()?, None, DEFAULT_FACE_BOUND)?
    };
    match verify_shelling(&cert) {
        None => println!("{name}: {} facets, {} spheres, verified", cert.len(), cert.spanning_count()),
        Some(f) => println!("{name}: {} facets, not a shelling: {}", cert.len(), f.render(&t)),
    }
    Ok(())
}

fn main() -> treeshell::Result<()> {
    let hex = CapacityTree::parse(include_str!("../fixtures/path_1_1_1.ctree"))?;
    print!("{}", shell_full_distributable(&hex, None, DEFAULT_FACE_BOUND)?.render());
    report("hub star (full)", include_str!("../fixtures/hub_cap2_star.ctree"), true)?;
    report("path6 (first children)", include_str!("../fixtures/path6.ctree"), false)?;
    report("fork6 (first children)", include_str!("../fixtures/fork6.ctree"), false)?;
    Ok(())
}
