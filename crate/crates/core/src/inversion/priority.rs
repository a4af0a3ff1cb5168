//! Travels-farther comparison, augmented channel lists and the greedy
//! label prioritization scheme.

use std::cmp::Ordering;

use super::Engine;
use crate::tree::{Label, Vertex};

/// A directed path (vertex sequence) carried by a label.
#[derive(Clone, Copy, Debug)]
pub struct Walk<'a> {
    pub label: Label,
    pub path: &'a [Vertex],
}

impl<'a> Walk<'a> {
    pub fn new(label: Label, path: &'a [Vertex]) -> Self {
        Walk { label, path }
    }

    /// The part of the path from `v` on, if `v` lies on it.
    pub fn from(&self, v: Vertex) -> Option<Walk<'a>> {
        let i = self.path.iter().position(|&x| x == v)?;
        Some(Walk::new(self.label, &self.path[i..]))
    }

    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn end(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        self.path.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.path.contains(&v)
    }

    fn next_after(&self, v: Vertex) -> Option<Vertex> {
        let i = self.path.iter().position(|&x| x == v)?;
        self.path.get(i + 1).copied()
    }

    /// The same vertices walked backwards.
    pub fn reversed(&self) -> Vec<Vertex> {
        self.path.iter().rev().copied().collect()
    }
}

/// How two walks overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meeting {
    Disjoint,
    /// Some edge is traversed in opposite directions.
    Opposed,
    /// Directed edges in common; the final one is `(x, y)`.
    SharedEdge { x: Vertex, y: Vertex },
    /// Exactly one common vertex and no common edge.
    Vertex(Vertex),
}

pub fn meeting(a: &Walk, b: &Walk) -> Meeting {
    let mut last = None;
    for (p, q) in a.edges() {
        for (r, s) in b.edges() {
            if p == s && q == r {
                return Meeting::Opposed;
            }
            if p == r && q == s {
                last = Some((p, q));
            }
        }
    }
    if let Some((x, y)) = last {
        return Meeting::SharedEdge { x, y };
    }
    match a.path.iter().find(|v| b.contains(**v)) {
        Some(&w) => Meeting::Vertex(w),
        None => Meeting::Disjoint,
    }
}

impl Engine<'_> {
    /// Whether `mu` travels farther than `nu` (`Greater`), the reverse
    /// (`Less`), or neither clause decides (`None`). Clauses are tried in
    /// order and the first applicable one decides.
    pub fn travel_cmp(&self, mu: &Walk, nu: &Walk) -> Option<Ordering> {
        match meeting(mu, nu) {
            Meeting::Disjoint | Meeting::Opposed => None,
            Meeting::SharedEdge { x, y } => {
                let (m, n) = (mu.next_after(y), nu.next_after(y));
                match (m, n) {
                    (Some(_), None) => Some(Ordering::Greater),
                    (None, Some(_)) => Some(Ordering::Less),
                    (None, None) => {
                        if mu.label == nu.label {
                            return None;
                        }
                        // Equal destinations: moving back in preorder the
                        // smaller label goes farther, moving forward the larger.
                        let backwards = x > y;
                        let mu_smaller = mu.label < nu.label;
                        Some(if backwards == mu_smaller {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        })
                    }
                    (Some(a), Some(b)) => {
                        let c = &self.coarse[y.0];
                        for level in 0..c.depth() {
                            let dm = c.path_distance(level, mu.start(), mu.end());
                            let dn = c.path_distance(level, nu.start(), nu.end());
                            if let (Ok(dm), Ok(dn)) = (dm, dn) {
                                if dm != dn {
                                    return Some(dm.cmp(&dn));
                                }
                            }
                        }
                        Some(self.prio_rank(y, b).cmp(&self.prio_rank(y, a)))
                    }
                }
            }
            Meeting::Vertex(x) => match (mu.next_after(x), nu.next_after(x)) {
                (Some(_), None) => Some(Ordering::Greater),
                (None, Some(_)) => Some(Ordering::Less),
                (None, None) => None,
                (Some(a), Some(b)) => Some(self.prio_rank(x, b).cmp(&self.prio_rank(x, a))),
            },
        }
    }

    /// Position of neighbour `v` in the channel order at `u` (0 = highest).
    pub fn prio_rank(&self, u: Vertex, v: Vertex) -> usize {
        self.channels[u.0]
            .iter()
            .position(|&x| x == v)
            .expect("prio_rank on non-neighbours")
    }

    /// Every tree edge directed away from `w`: the channels at `w` in
    /// priority order, then augmented breadth first. At each edge `(x, y)`
    /// the continuations `(y, y')` are ordered by coarsening-path-distance
    /// at `y` and then by edge priority at `y`.
    pub fn augmented_channels(&self, w: Vertex) -> Vec<(Vertex, Vertex)> {
        let t = self.tree;
        let mut list: Vec<(Vertex, Vertex)> = self.channels[w.0].iter().map(|&v| (w, v)).collect();
        let mut i = 0;
        while i < list.len() {
            let (x, y) = list[i];
            let c = &self.coarse[y.0];
            let mut next: Vec<Vertex> = t.neighbors(y).filter(|&z| z != x).collect();
            next.sort_by(|&a, &b| {
                for level in 0..c.depth() {
                    if let (Ok(da), Ok(db)) =
                        (c.path_distance(level, x, a), c.path_distance(level, x, b))
                    {
                        if da != db {
                            return db.cmp(&da);
                        }
                    }
                }
                self.prio_rank(y, a).cmp(&self.prio_rank(y, b))
            });
            list.extend(next.into_iter().map(|z| (y, z)));
            i += 1;
        }
        list
    }

    fn edge_slot(&self, w: Vertex, a: Vertex, b: Vertex) -> usize {
        self.chan_index[w.0][self.tree.edge_between(a, b).unwrap().0]
    }

    /// Sorted indices, in the augmented list at `w`, of the edges of `walk`
    /// (which must start at `w`) not yet in `filled`.
    fn unfilled(&self, w: Vertex, walk: &Walk, filled: &[bool]) -> Vec<usize> {
        let mut idx: Vec<usize> = walk
            .edges()
            .map(|(a, b)| self.edge_slot(w, a, b))
            .filter(|&i| !filled[i])
            .collect();
        idx.sort_unstable();
        idx
    }

    fn mark(&self, w: Vertex, walk: &Walk, filled: &mut [bool]) {
        for (a, b) in walk.edges() {
            filled[self.edge_slot(w, a, b)] = true;
        }
    }

    /// Lexicographic order on channel index lists. A proper prefix ranks
    /// after its extensions, so an empty list ranks last.
    pub fn list_cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return x.cmp(y);
            }
        }
        if self.knobs.prefix_ranks_last {
            b.len().cmp(&a.len())
        } else {
            a.len().cmp(&b.len())
        }
    }

    /// Ranks `a` against `b` at a greedy step: `Less` means `a` is chosen
    /// first. Ties on the channel list go to the label travelling farther
    /// from `w`, then to the smaller label.
    fn step_cmp(&self, a: (&Walk, &[usize]), b: (&Walk, &[usize])) -> (Ordering, bool) {
        match self.list_cmp(a.1, b.1) {
            Ordering::Equal => match self.travel_cmp(a.0, b.0) {
                Some(Ordering::Greater) => (Ordering::Less, true),
                Some(Ordering::Less) => (Ordering::Greater, true),
                _ => (a.0.label.cmp(&b.0.label), false),
            },
            o => (o, true),
        }
    }

    /// The label prioritization scheme at `w`. Each walk must start at `w`.
    /// Returns indices into `walks`, highest priority first.
    pub fn prioritize(&self, w: Vertex, walks: &[Walk]) -> Vec<usize> {
        self.prioritize_after(w, &[], walks)
    }

    /// The scheme at `w` continued after the walks in `placed` have
    /// already been chosen and their channels filled.
    pub fn prioritize_after(&self, w: Vertex, placed: &[Walk], walks: &[Walk]) -> Vec<usize> {
        let mut filled = vec![false; self.tree.len()];
        for p in placed {
            self.mark(w, p, &mut filled);
        }
        let mut left: Vec<usize> = (0..walks.len()).collect();
        let mut order = Vec::with_capacity(walks.len());
        while !left.is_empty() {
            let lists: Vec<Vec<usize>> =
                left.iter().map(|&i| self.unfilled(w, &walks[i], &filled)).collect();
            let best = (0..left.len())
                .min_by(|&a, &b| {
                    self.step_cmp((&walks[left[a]], &lists[a]), (&walks[left[b]], &lists[b]))
                        .0
                })
                .unwrap();
            let pick = left.remove(best);
            self.mark(w, &walks[pick], &mut filled);
            order.push(pick);
        }
        order
    }

    /// Runs the scheme at `w` until `a` or `b` is picked and reports
    /// whether `a` strictly beat `b` at that moment (a smaller unfilled
    /// list, or an equal one and farther travel).
    pub fn beats_at(&self, w: Vertex, walks: &[Walk], a: usize, b: usize) -> bool {
        let mut filled = vec![false; self.tree.len()];
        let mut left: Vec<usize> = (0..walks.len()).collect();
        loop {
            let lists: Vec<Vec<usize>> =
                left.iter().map(|&i| self.unfilled(w, &walks[i], &filled)).collect();
            let best = (0..left.len())
                .min_by(|&x, &y| {
                    self.step_cmp((&walks[left[x]], &lists[x]), (&walks[left[y]], &lists[y]))
                        .0
                })
                .unwrap();
            let pick = left[best];
            if pick == a || pick == b {
                let ia = left.iter().position(|&i| i == a).unwrap();
                let ib = left.iter().position(|&i| i == b).unwrap();
                let (o, decided) =
                    self.step_cmp((&walks[a], &lists[ia]), (&walks[b], &lists[ib]));
                return o == Ordering::Less && decided;
            }
            left.remove(best);
            self.mark(w, &walks[pick], &mut filled);
        }
    }
}
