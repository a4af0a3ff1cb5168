//! Greedy sorting under every strategy, the potential bound and the weak
//! order of a small tree.

use treeshell::sorter::{check_confluence, Strategy, WeakOrder, DEFAULT_LABELLING_BOUND};
use treeshell::{CapacityTree, Engine, Labelling};

fn main() -> treeshell::Result<()> {
    let t = CapacityTree::parse(include_str!("../fixtures/path_2_1_1.ctree"))?;
    let sigma = Labelling::parse(include_str!("../fixtures/path_2_1_1.lab"), &t)?;
    let e = Engine::new(&t);
    println!("f = {}", e.potential(&sigma)?);
    for s in [Strategy::First, Strategy::Random(7), Strategy::LargestPotentialDrop] {
        print!("{}", e.greedy_sort(&sigma, s)?.render(&t));
    }

    let star = CapacityTree::parse(include_str!("../fixtures/hub_cap2_star.ctree"))?;
    let e = Engine::new(&star);
    let w = WeakOrder::build(&e, DEFAULT_LABELLING_BOUND)?;
    println!(
        "hub star weak order: {} labellings, {} covers, acyclic={}, sinks={}",
        w.len(),
        w.arc_count(),
        w.is_acyclic(),
        w.sinks().len()
    );
    let r = check_confluence(&e, DEFAULT_LABELLING_BOUND, true)?;
    println!("confluent including {} restrictions: {}", r.restrictions, r.ok());
    Ok(())
}
