//! Integral homology of small chessboard complexes against the
//! connectivity bound, and the sorting obstruction it implies.

use treeshell::complex::{chessboard_tree, DEFAULT_FACE_BOUND};
use treeshell::homology::{nu, reduced_homology, sorting_obstruction_report};

fn main() -> treeshell::Result<()> {
    for m in 1..=3 {
        for n in m..=6 {
            let h = reduced_homology(&chessboard_tree(m, n)?, None, DEFAULT_FACE_BOUND)?;
            let groups: Vec<String> = h.groups.iter().filter(|g| !g.is_zero()).map(|g| g.to_string()).collect();
            println!(
                "M_{{{m},{n}}} nu={} vanishes below nu: {}  {}",
                nu(m, n),
                h.vanishes_through(nu(m, n) as isize - 1),
                groups.join(", ")
            );
        }
    }
    print!("{}", sorting_obstruction_report(3, 4, DEFAULT_FACE_BOUND)?.render());
    let h = reduced_homology(&chessboard_tree(5, 5)?, None, DEFAULT_FACE_BOUND)?;
    println!("M_{{5,5}}: {}", h.group(2).unwrap());
    Ok(())
}
