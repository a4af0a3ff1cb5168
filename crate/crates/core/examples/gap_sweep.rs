//! Sweeps every distributable tree up to a size and counts failures of
//! the sorting properties: potential decrease along covers, confluence
//! with and without subtree restriction, and sorting within the bound.
//!
//! Usage: gap_sweep [max_vertices] [max_labels] [max_cap]

use treeshell::enumerate::distributable_trees;
use treeshell::sorter::{check_confluence, Strategy, WeakOrder};
use treeshell::Engine;

const BOUND: usize = 1_000_000;

fn main() -> treeshell::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (maxv, maxl, maxc) = (
        args.first().copied().unwrap_or(5) as usize,
        args.get(1).copied().unwrap_or(5),
        args.get(2).copied().unwrap_or(3),
    );
    let trees = distributable_trees(maxv, maxl, maxc);
    let (mut cover_fail, mut conf_fail, mut sub_fail, mut sort_fail) = (0, 0, 0, 0);
    for t in &trees {
        let e = Engine::new(t);
        let w = WeakOrder::build(&e, BOUND)?;
        let f = w.nodes.iter().map(|s| e.potential(s)).collect::<treeshell::Result<Vec<_>>>()?;
        cover_fail += w.covers().filter(|&(u, l)| f[l] >= f[u]).count();
        if !check_confluence(&e, BOUND, false)?.ok() {
            conf_fail += 1;
        } else if let Some(fail) = check_confluence(&e, BOUND, true)?.failure {
            if sub_fail == 0 {
                print!("first subtree failure on\n{t}  {}\n", fail.render(t));
            }
            sub_fail += 1;
        }
        for s in &w.nodes {
            for st in [Strategy::First, Strategy::Random(3), Strategy::LargestPotentialDrop] {
                if !e.greedy_sort(s, st).is_ok_and(|tr| tr.terminal.is_sorted(t)) {
                    sort_fail += 1;
                }
            }
        }
    }
    println!("{} trees", trees.len());
    println!("covers where f does not drop: {cover_fail}");
    println!("trees without a unique sink: {conf_fail}");
    println!("trees failing subtree confluence: {sub_fail}");
    println!("sorting runs failing: {sort_fail}");
    Ok(())
}
