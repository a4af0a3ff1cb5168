//! Coarsenings at a local root and the edge priority they induce.

use crate::error::{Error, Result};
use crate::tree::{CapacityTree, Vertex};

/// Nested three-part decompositions of a tree around a local root `r`.
///
/// Level 0 covers the whole tree. Each further level subdivides the `C2`
/// part of the previous one. A vertex outside the current subtree has no
/// part at that level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coarsening {
    pub local_root: Vertex,
    /// `levels[l][v]` is 1, 2 or 3 for the part containing `v`, 0 if uncovered.
    levels: Vec<Vec<u8>>,
    /// Children of `r` in the order they leave `C2`, then the last survivor.
    removal_order: Vec<Vertex>,
}

impl Coarsening {
    pub fn new(t: &CapacityTree, r: Vertex) -> Coarsening {
        let n = t.len();
        let mut covered = vec![true; n];
        let mut remaining: Vec<Vertex> = t.children(r).to_vec();
        let mut levels = Vec::new();
        let mut removal_order = Vec::new();
        while remaining.len() >= 2 {
            let mut parts: Vec<u8> = covered.iter().map(|&c| if c { 2 } else { 0 }).collect();
            let first = remaining.remove(0);
            removal_order.push(first);
            for v in t.subtree(first) {
                parts[v.0] = 1;
                covered[v.0] = false;
            }
            if remaining.len() >= 2 {
                let last = remaining.pop().unwrap();
                removal_order.push(last);
                for v in t.subtree(last) {
                    parts[v.0] = 3;
                    covered[v.0] = false;
                }
            }
            levels.push(parts);
        }
        removal_order.extend(remaining);
        Coarsening {
            local_root: r,
            levels,
            removal_order,
        }
    }

    /// Number of nontrivial levels. Zero when `r` has at most one child.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn part(&self, level: usize, v: Vertex) -> Option<u8> {
        match self.levels[level][v.0] {
            0 => None,
            p => Some(p),
        }
    }

    /// Position of `v` on the line the levels up to `level` cut the tree
    /// into: parts cut off as `C1` earlier sit before every part at
    /// `level` (0), earlier `C3` parts after (4).
    pub fn nested_part(&self, level: usize, v: Vertex) -> u8 {
        for l in (0..=level).rev() {
            if let Some(p) = self.part(l, v) {
                return match (l == level, p) {
                    (true, p) => p,
                    (false, 1) => 0,
                    _ => 4,
                };
            }
        }
        unreachable!("level 0 covers every vertex")
    }

    /// `|i - j|` for a path beginning in `C_i` and ending in `C_j`.
    pub fn path_distance(&self, level: usize, from: Vertex, to: Vertex) -> Result<usize> {
        match (self.part(level, from), self.part(level, to)) {
            (Some(i), Some(j)) => Ok(i.abs_diff(j) as usize),
            _ => Err(Error::Precondition(format!(
                "path endpoint outside coarsening level {level}"
            ))),
        }
    }

    /// Both vertices share a part at every level (or are both uncovered).
    pub fn always_together(&self, a: Vertex, b: Vertex) -> bool {
        self.levels.iter().all(|l| l[a.0] == l[b.0])
    }

    /// Children of the local root ordered by when they leave `C2`.
    pub fn removal_order(&self) -> &[Vertex] {
        &self.removal_order
    }
}

/// Neighbours of `u` from highest to lowest edge priority: children cut
/// off at successive coarsening levels (`C1` before `C3`), then the parent,
/// then the child that survives every level.
pub fn channel_order(t: &CapacityTree, c: &Coarsening) -> Vec<Vertex> {
    let u = c.local_root;
    let removed = c.removal_order();
    let cut_off = if removed.is_empty() { 0 } else { removed.len() - 1 };
    let mut order: Vec<Vertex> = removed[..cut_off].to_vec();
    order.extend(t.parent(u));
    order.extend(removed.get(cut_off));
    order
}

/// Literal evaluation of the three clauses making `e_{u,w}` a higher
/// priority edge than `e_{u,v}` at `u`.
pub fn edge_priority_higher(t: &CapacityTree, c: &Coarsening, w: Vertex, v: Vertex) -> Result<bool> {
    let u = c.local_root;
    if w == v {
        return Err(Error::Precondition("edges must be distinct".into()));
    }
    if t.edge_between(u, w).is_none() || t.edge_between(u, v).is_none() {
        return Err(Error::Precondition(format!(
            "edges must be incident to `{}`",
            t.name(u)
        )));
    }
    let clause1 = (0..c.depth()).any(|l| c.part(l, v) == Some(2) && c.part(l, w) != Some(2));
    let clause2 = (0..c.depth()).any(|l| c.part(l, w) == Some(1) && c.part(l, v) == Some(3));
    let clause3 = (0..c.depth()).all(|l| c.part(l, v) == Some(2) && c.part(l, w) == Some(2))
        && t.parent(v) == Some(u)
        && t.parent(u) == Some(w);
    Ok(clause1 || clause2 || clause3)
}
