//! The inversion function for distributable capacity trees: label
//! inversion rules, node inversion pairs, pairwise redistribution and
//! base-labellings.

mod base;
mod coarsening;
mod priority;
mod redistribute;
mod rules;

pub use base::{SinkOrder, base_labelling_with};
pub use coarsening::{Coarsening, channel_order, edge_priority_higher};
pub use priority::{Meeting, Walk, meeting};
pub use rules::{InversionReport, LabelPair, NodePair, Rule};

use crate::tree::{CapacityTree, Label, Labelling, Vertex};

/// Interpretation switches for places where the rule text admits more than
/// one reading. The defaults are the readings the exhaustive suites accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Knobs {
    /// In the greedy scheme a proper prefix ranks after its extensions.
    pub prefix_ranks_last: bool,
    /// E3 applies only when neither walk starts on the other one.
    pub e3_merge_only: bool,
    /// V1 and V2 require the meeting vertex to be a proper ancestor of both hosts.
    pub v_requires_ancestor: bool,
    /// E2 ranks `λ_i` against every label held at `v_j`, not just `λ_j`.
    pub e2_full_context: bool,
    /// "Ancestor" in V2 means proper ancestor.
    pub v2_strict: bool,
    /// "Ancestor" in V3 means proper ancestor.
    pub v3_strict: bool,
    /// V3 needs the meeting vertex to differ from both hosts.
    pub v3_meet_below: bool,
    /// V2 compares destinations in depth-first order whenever they share
    /// the part of a level separating the hosts.
    pub v2_dfs: bool,
    /// V3 also orders hosts on different branches whose walks meet away
    /// from their common ancestors.
    pub v3_branches: bool,
    /// V1 places destinations cut off at earlier levels before `C1` or after `C3`.
    pub v1_nested: bool,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs {
            prefix_ranks_last: true,
            e3_merge_only: true,
            v_requires_ancestor: true,
            e2_full_context: true,
            v2_strict: false,
            v3_strict: false,
            v3_meet_below: true,
            v2_dfs: true,
            v3_branches: true,
            v1_nested: true,
        }
    }
}

/// Precomputed priority data for one capacity tree.
#[derive(Clone, Debug)]
pub struct Engine<'t> {
    pub(crate) tree: &'t CapacityTree,
    dest: Vec<Vertex>,
    pub(crate) coarse: Vec<Coarsening>,
    /// Neighbours of each vertex in channel priority order.
    pub(crate) channels: Vec<Vec<Vertex>>,
    /// `chan_index[w][c]`: position, in the augmented list at `w`, of the
    /// edge whose child endpoint is `c`.
    chan_index: Vec<Vec<usize>>,
    paths: Vec<Vec<Vec<Vertex>>>,
    pub knobs: Knobs,
}

impl<'t> Engine<'t> {
    pub fn new(tree: &'t CapacityTree) -> Engine<'t> {
        Self::with_knobs(tree, Knobs::default())
    }

    pub fn with_knobs(tree: &'t CapacityTree, knobs: Knobs) -> Engine<'t> {
        let coarse: Vec<Coarsening> = tree.vertices().map(|v| Coarsening::new(tree, v)).collect();
        let channels = coarse.iter().map(|c| channel_order(tree, c)).collect();
        let paths = tree
            .vertices()
            .map(|a| tree.vertices().map(|b| tree.path_between(a, b)).collect())
            .collect();
        let mut engine = Engine {
            tree,
            dest: tree.destinations(),
            coarse,
            channels,
            chan_index: Vec::new(),
            paths,
            knobs,
        };
        engine.chan_index = tree
            .vertices()
            .map(|w| {
                let mut idx = vec![usize::MAX; tree.len()];
                for (i, (a, b)) in engine.augmented_channels(w).into_iter().enumerate() {
                    idx[tree.edge_between(a, b).unwrap().0] = i;
                }
                idx
            })
            .collect();
        engine
    }

    pub fn tree(&self) -> &'t CapacityTree {
        self.tree
    }

    pub fn dest(&self, label: Label) -> Vertex {
        self.dest[label as usize - 1]
    }

    pub fn coarsening(&self, r: Vertex) -> &Coarsening {
        &self.coarse[r.0]
    }

    /// Outward channels at `v`, highest priority first.
    pub fn capacity_channels(&self, v: Vertex) -> Vec<(Vertex, Vertex)> {
        self.channels[v.0].iter().map(|&w| (v, w)).collect()
    }

    /// The path of `label` when it sits at `at`.
    pub fn walk(&self, label: Label, at: Vertex) -> Walk<'_> {
        Walk::new(label, &self.paths[at.0][self.dest(label).0])
    }

    pub fn path(&self, a: Vertex, b: Vertex) -> &[Vertex] {
        &self.paths[a.0][b.0]
    }

    /// Labels of a labelling prioritized at `w` (all labels at `w`).
    pub fn prioritize_at(&self, w: Vertex, labels: &[Label]) -> Vec<Label> {
        let walks: Vec<Walk> = labels.iter().map(|&l| self.walk(l, w)).collect();
        self.prioritize(w, &walks).into_iter().map(|i| labels[i]).collect()
    }

    pub fn is_inversion_free(&self, sigma: &Labelling) -> bool {
        self.node_inversions(sigma).is_empty()
    }
}
