//! Base-labellings: the unique inversion-free labelling of a component
//! holding a prescribed set of labels.

use itertools::Itertools;

use super::Engine;
use super::priority::Walk;
use crate::error::{Error, Result};
use crate::tree::{Label, Vertex, multiset_permutations};

/// Order in which simultaneous sinks are saturated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SinkOrder {
    /// Smallest vertex in preorder first.
    #[default]
    Preorder,
    /// Largest vertex in preorder first.
    Reverse,
}

/// A labelling of part of a tree: `slots[v]` for `v` in the component,
/// empty elsewhere.
pub type Partial = Vec<Vec<Label>>;

impl Engine<'_> {
    /// Every inversion-free way of placing `labels` on `component`, by
    /// enumerating all placements.
    pub fn inversion_free_brute(&self, component: &[Vertex], labels: &[Label]) -> Vec<Partial> {
        let t = self.tree;
        let word: Vec<Vertex> = component
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, t.cap(v) as usize))
            .collect();
        let mut sorted_labels = labels.to_vec();
        sorted_labels.sort_unstable();
        multiset_permutations(&word)
            .into_iter()
            .filter_map(|places| {
                let mut slots = vec![Vec::new(); t.len()];
                for (&l, v) in sorted_labels.iter().zip(places) {
                    slots[v.0].push(l);
                }
                self.free_among(&slots, component).then_some(slots)
            })
            .collect()
    }

    /// The base-labelling of `component` holding `labels`.
    pub fn base_labelling(&self, component: &[Vertex], labels: &[Label]) -> Result<Partial> {
        base_labelling_with(self, component, labels, SinkOrder::default())
    }
}

pub(crate) fn check_supply(e: &Engine, component: &[Vertex], labels: &[Label]) -> Result<()> {
    let t = e.tree;
    let cap: u32 = component.iter().map(|&v| t.cap(v)).sum();
    if cap as usize != labels.len() {
        return Err(Error::Precondition(format!(
            "component capacity {cap} differs from {} supplied labels",
            labels.len()
        )));
    }
    if !t.is_distributable() {
        return Err(Error::Precondition("ambient tree is not distributable".into()));
    }
    Ok(())
}

pub fn base_labelling_with(
    e: &Engine,
    component: &[Vertex],
    labels: &[Label],
    order: SinkOrder,
) -> Result<Partial> {
    check_supply(e, component, labels)?;
    let mut found = e.place(component, labels, order);
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        k => Err(Error::Construction(format!(
            "base-labelling search left {k} inversion-free placements"
        ))),
    }
}

impl Engine<'_> {
    /// The vertex of `piece` nearest the destination of `l`, where the
    /// label's route leaves the piece or ends.
    fn exit_vertex(&self, piece: &[Vertex], l: Label) -> Vertex {
        let d = self.dest(l);
        *piece.iter().min_by_key(|&&v| self.tree.distance(v, d)).unwrap()
    }

    /// Capacity of `side` minus the labels of `pool` leaving `piece` there.
    fn discrepancy(&self, piece: &[Vertex], side: &[Vertex], pool: &[Label]) -> i64 {
        let cap: i64 = side.iter().map(|&v| self.tree.cap(v) as i64).sum();
        let demand = pool.iter().filter(|&&l| side.contains(&self.exit_vertex(piece, l))).count();
        cap - demand as i64
    }

    /// Vertices of `piece` on the child side of the edge into `c`.
    fn below(&self, piece: &[Vertex], c: Vertex) -> Vec<Vertex> {
        piece.iter().copied().filter(|&v| self.tree.in_subtree(c, v)).collect()
    }

    /// Connected pieces of `piece` after deleting `gone` and the edges
    /// into the children in `cut`.
    fn split(&self, piece: &[Vertex], gone: Option<Vertex>, cut: &[Vertex]) -> Vec<Vec<Vertex>> {
        let t = self.tree;
        let keep: Vec<Vertex> = piece.iter().copied().filter(|&v| Some(v) != gone).collect();
        let mut seen = vec![false; t.len()];
        let mut out = Vec::new();
        for &s in &keep {
            if seen[s.0] {
                continue;
            }
            let mut part = vec![s];
            seen[s.0] = true;
            let mut i = 0;
            while i < part.len() {
                let v = part[i];
                for u in t.neighbors(v) {
                    let edge = t.edge_between(u, v).unwrap();
                    if keep.contains(&u) && !seen[u.0] && !cut.contains(&edge) {
                        seen[u.0] = true;
                        part.push(u);
                    }
                }
                i += 1;
            }
            part.sort();
            out.push(part);
        }
        out
    }

    /// Every placement of `pool` on `piece` the saturation procedure can
    /// produce, keeping only inversion-free ones. Choices the procedure
    /// leaves to inversion-freeness are searched.
    fn place(&self, piece: &[Vertex], pool: &[Label], order: SinkOrder) -> Vec<Partial> {
        let t = self.tree;
        if piece.len() == 1 {
            let mut slots = vec![Vec::new(); t.len()];
            slots[piece[0].0] = pool.iter().copied().sorted().collect();
            return vec![slots];
        }
        let inner: Vec<Vertex> = piece
            .iter()
            .copied()
            .filter(|&c| t.parent(c).is_some_and(|p| piece.contains(&p)))
            .collect();
        let disc: Vec<i64> = inner
            .iter()
            .map(|&c| self.discrepancy(piece, &self.below(piece, c), pool))
            .collect();
        let balanced: Vec<Vertex> = inner.iter().zip(&disc).filter(|d| *d.1 == 0).map(|d| *d.0).collect();
        let parts: Vec<(Vec<Vertex>, Vec<Label>)> = if !balanced.is_empty() {
            self.split(piece, None, &balanced)
                .into_iter()
                .map(|part| {
                    let mine = pool.iter().copied().filter(|&l| part.contains(&self.exit_vertex(piece, l))).collect();
                    (part, mine)
                })
                .collect()
        } else {
            return self.saturate_sink(piece, pool, &inner, &disc, order);
        };
        let results: Vec<Vec<Partial>> = parts.iter().map(|(p, l)| self.place(p, l, order)).collect();
        self.combine(piece, &results)
    }

    /// Saturates one sink of the discrepancy orientation and recurses on
    /// the pieces left after deleting it.
    fn saturate_sink(
        &self,
        piece: &[Vertex],
        pool: &[Label],
        inner: &[Vertex],
        disc: &[i64],
        order: SinkOrder,
    ) -> Vec<Partial> {
        let t = self.tree;
        // An edge points from the side with spare capacity to the other.
        let outgoing = |v: Vertex| {
            inner.iter().zip(disc).any(|(&c, &d)| {
                let p = t.parent(c).unwrap();
                (c == v && d > 0) || (p == v && d < 0)
            })
        };
        let mut sinks = piece.iter().copied().filter(|&v| !outgoing(v));
        let v = match order {
            SinkOrder::Preorder => sinks.next(),
            SinkOrder::Reverse => sinks.next_back(),
        };
        let Some(v) = v else {
            return Vec::new();
        };
        let cap = t.cap(v) as usize;
        let cand: Vec<Label> = pool.iter().copied().filter(|&l| self.exit_vertex(piece, l) == v).collect();
        let leaves = |l: Label| self.dest(l) != v;
        let mut chosen: Vec<Label> = Vec::new();
        for w in self.channels[v.0].iter().copied().filter(|w| !piece.contains(w)) {
            if chosen.len() == cap {
                break;
            }
            let across: Vec<Label> = cand
                .iter()
                .copied()
                .filter(|&l| !chosen.contains(&l) && self.walk(l, v).path.get(1) == Some(&w))
                .collect();
            if let Some(&best) = self.prioritize_at(v, &across).first() {
                chosen.push(best);
            }
        }
        let rest: Vec<Label> = cand.iter().copied().filter(|&l| leaves(l) && !chosen.contains(&l)).collect();
        let placed: Vec<Walk> = chosen.iter().map(|&l| self.walk(l, v)).collect();
        let walks: Vec<Walk> = rest.iter().map(|&l| self.walk(l, v)).collect();
        for i in self.prioritize_after(v, &placed, &walks) {
            if chosen.len() == cap {
                break;
            }
            chosen.push(rest[i]);
        }
        let home: Vec<Label> = cand.iter().copied().filter(|&l| !leaves(l)).collect();
        let need = cap - chosen.len();
        let pieces = self.split(piece, Some(v), &[]);
        // Each remaining piece takes as many excess labels as the
        // discrepancy across its edge to `v`.
        let quota: Vec<usize> = pieces
            .iter()
            .map(|p| {
                let side = p.iter().copied().find(|u| t.edge_between(*u, v).is_some()).unwrap();
                let c = t.edge_between(side, v).unwrap();
                let d = disc[inner.iter().position(|&x| x == c).unwrap()];
                d.unsigned_abs() as usize
            })
            .collect();
        let mut out: Vec<Partial> = Vec::new();
        for fill in home.iter().copied().combinations(need.min(home.len())) {
            if chosen.len() + fill.len() != cap {
                continue;
            }
            let at_v: Vec<Label> = chosen.iter().chain(&fill).copied().sorted().collect();
            let excess: Vec<Label> = cand.iter().copied().filter(|l| !at_v.contains(l)).collect();
            for split in quota_splits(&excess, &quota) {
                let results: Vec<Vec<Partial>> = pieces
                    .iter()
                    .zip(&split)
                    .map(|(p, extra)| {
                        let mut mine: Vec<Label> = pool
                            .iter()
                            .copied()
                            .filter(|&l| p.contains(&self.exit_vertex(piece, l)))
                            .collect();
                        mine.extend(extra);
                        self.place(p, &mine, order)
                    })
                    .collect();
                for mut slots in self.combine(piece, &results) {
                    slots[v.0] = at_v.clone();
                    if self.free_among(&slots, piece) && !out.contains(&slots) {
                        out.push(slots);
                    }
                }
            }
        }
        out
    }

    /// Inversion-free unions of one placement from each part.
    fn combine(&self, piece: &[Vertex], results: &[Vec<Partial>]) -> Vec<Partial> {
        let n = self.tree.len();
        let mut out = Vec::new();
        for pick in results.iter().map(|r| r.iter()).multi_cartesian_product() {
            let mut slots: Partial = vec![Vec::new(); n];
            for part in pick {
                for (v, ls) in part.iter().enumerate() {
                    if !ls.is_empty() {
                        slots[v] = ls.clone();
                    }
                }
            }
            let filled: Vec<Vertex> = piece.iter().copied().filter(|v| !slots[v.0].is_empty()).collect();
            if self.free_among(&slots, &filled) && !out.contains(&slots) {
                out.push(slots);
            }
        }
        if results.is_empty() {
            out.push(vec![Vec::new(); n]);
        }
        out
    }
}

/// Ways to hand out `items` so that part `i` receives `quota[i]` of them.
fn quota_splits(items: &[Label], quota: &[usize]) -> Vec<Vec<Vec<Label>>> {
    let Some((&q, rest)) = quota.split_first() else {
        return if items.is_empty() { vec![Vec::new()] } else { Vec::new() };
    };
    let mut out = Vec::new();
    for take in items.iter().copied().combinations(q) {
        let left: Vec<Label> = items.iter().copied().filter(|l| !take.contains(l)).collect();
        for mut tail in quota_splits(&left, rest) {
            tail.insert(0, take.clone());
            out.push(tail);
        }
    }
    out
}
