//! The unique inversion-free redistribution of labels between two vertices.

use itertools::Itertools;

use super::Engine;
use crate::error::{Error, Result};
use crate::tree::{Label, Labelling, Vertex};

impl Engine<'_> {
    /// Every split of the labels held at `a` and `b` that leaves `(a, b)`
    /// free of inversions, by exhaustive search.
    pub fn redistributions_brute(&self, sigma: &Labelling, a: Vertex, b: Vertex) -> Vec<Labelling> {
        let pool: Vec<Label> = sigma.at(a).iter().chain(sigma.at(b)).copied().sorted().collect();
        let ca = sigma.at(a).len();
        pool.iter()
            .copied()
            .combinations(ca)
            .filter_map(|la| {
                let lb: Vec<Label> = pool.iter().copied().filter(|l| !la.contains(l)).collect();
                (!self.pair_inverted(a, &la, b, &lb)).then(|| sigma.with_pair(a, la, b, lb))
            })
            .collect()
    }

    /// The redistribution of the labels at `a` and `b` after which `(a, b)`
    /// is no longer an inversion pair.
    ///
    /// Labels are first tied to the vertex of the `a`-`b` path where their
    /// route to their destination leaves it. Opposite traversals force every
    /// label tied to a vertex nearer `a` than some pivot onto `a`, and those
    /// nearer `b` onto `b`; the pivot's own labels are then split by the
    /// remaining rules, which is done by trying each admissible split.
    pub fn unique_redistribution(&self, sigma: &Labelling, a: Vertex, b: Vertex) -> Result<Labelling> {
        if a == b {
            return Err(Error::Precondition("redistribution needs two distinct vertices".into()));
        }
        let path = self.path(a, b);
        let pool: Vec<Label> = sigma.at(a).iter().chain(sigma.at(b)).copied().sorted().collect();
        let ca = sigma.at(a).len();
        // Position along the path where each label's route leaves it.
        let exit = |l: Label| -> usize {
            let d = self.dest(l);
            path.iter()
                .enumerate()
                .min_by_key(|&(_, &v)| self.tree.distance(v, d))
                .map(|(i, _)| i)
                .unwrap()
        };
        let by_exit: Vec<(usize, Label)> = pool.iter().map(|&l| (exit(l), l)).sorted().collect();
        let mut found: Vec<Labelling> = Vec::new();
        for pivot in 0..path.len() {
            let near_a: Vec<Label> = by_exit.iter().filter(|e| e.0 < pivot).map(|e| e.1).collect();
            let near_b: Vec<Label> = by_exit.iter().filter(|e| e.0 > pivot).map(|e| e.1).collect();
            let at_pivot: Vec<Label> = by_exit.iter().filter(|e| e.0 == pivot).map(|e| e.1).collect();
            if near_a.len() > ca || near_b.len() > pool.len() - ca {
                continue;
            }
            for extra in at_pivot.iter().copied().combinations(ca - near_a.len()) {
                let la: Vec<Label> = near_a.iter().copied().chain(extra.iter().copied()).sorted().collect();
                let lb: Vec<Label> = pool.iter().copied().filter(|l| !la.contains(l)).collect();
                if !self.pair_inverted(a, &la, b, &lb) {
                    let cand = sigma.with_pair(a, la, b, lb);
                    if !found.contains(&cand) {
                        found.push(cand);
                    }
                }
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::Construction(format!(
                "no inversion-free redistribution between `{}` and `{}`",
                self.tree.name(a),
                self.tree.name(b)
            ))),
            k => Err(Error::Construction(format!(
                "{k} inversion-free redistributions between `{}` and `{}`",
                self.tree.name(a),
                self.tree.name(b)
            ))),
        }
    }
}
