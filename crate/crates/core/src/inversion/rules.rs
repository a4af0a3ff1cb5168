//! Label inversion rules E1-E3 and V1-V4, and node inversion pairs.

use std::cmp::Ordering;
use std::fmt;

use super::priority::{Meeting, Walk, meeting};
use super::Engine;
use crate::tree::{Label, Labelling, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    E1,
    E2,
    E3,
    V1,
    V2,
    V3,
    V4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelPair {
    pub li: Label,
    pub vi: Vertex,
    pub lj: Label,
    pub vj: Vertex,
    pub rule: Rule,
}

/// An unordered node inversion pair, `a < b` in preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePair {
    pub a: Vertex,
    pub b: Vertex,
    pub neighbor: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversionReport {
    pub label_pairs: Vec<LabelPair>,
    pub node_pairs: Vec<NodePair>,
}

impl InversionReport {
    pub fn neighbor_pairs(&self) -> impl Iterator<Item = &NodePair> {
        self.node_pairs.iter().filter(|p| p.neighbor)
    }

    pub fn render(&self, t: &crate::tree::CapacityTree) -> String {
        let mut out = String::new();
        for p in &self.label_pairs {
            out.push_str(&format!(
                "LABELPAIR {}@{} {}@{} rule={}\n",
                p.li,
                t.name(p.vi),
                p.lj,
                t.name(p.vj),
                p.rule
            ));
        }
        for p in &self.node_pairs {
            out.push_str(&format!(
                "NODEPAIR {} {} neighbor={}\n",
                t.name(p.a),
                t.name(p.b),
                p.neighbor
            ));
        }
        out
    }
}

impl Engine<'_> {
    /// The first rule under which `(λ_i, λ_j)` is a label inversion pair,
    /// with `λ_i` at `v_i`, `λ_j` at `v_j`, and `held_j` all labels at `v_j`.
    pub fn label_rule(
        &self,
        li: Label,
        vi: Vertex,
        lj: Label,
        vj: Vertex,
        held_j: &[Label],
    ) -> Option<Rule> {
        if vi == vj {
            return None;
        }
        let p = self.walk(li, vi);
        let q = self.walk(lj, vj);
        let t = self.tree;
        let m = meeting(&p, &q);
        if m == Meeting::Opposed {
            return Some(Rule::E1);
        }
        if p.contains(vj) && self.e2(&p, vj, lj, held_j) {
            return Some(Rule::E2);
        }
        if let Meeting::SharedEdge { x, y } = m {
            let tail_elsewhere = p.edges().any(|(a, b)| a != vj && q.edges().any(|e| e == (a, b)));
            let merge = !p.contains(vj) && !q.contains(vi);
            if tail_elsewhere && (merge || !self.knobs.e3_merge_only) {
                let (pr, qr) = (p.reversed(), q.reversed());
                let pr = Walk::new(li, &pr).from(y).unwrap();
                let qr = Walk::new(lj, &qr).from(y).unwrap();
                let j_closer = self.travel_cmp(&pr, &qr) == Some(Ordering::Greater);
                let i_farther = self.travel_cmp(&p, &q) == Some(Ordering::Greater);
                let _ = x;
                if j_closer && i_farther {
                    return Some(Rule::E3);
                }
            }
            return None;
        }
        let Meeting::Vertex(w) = m else {
            return None;
        };
        let (di, dj) = (p.end(), q.end());
        let above = |a: Vertex, b: Vertex, strict: bool| t.is_ancestor_or_self(a, b) && (a != b || !strict);
        let (s2, s3) = (self.knobs.v2_strict, self.knobs.v3_strict);
        let common = above(w, vi, true) && above(w, vj, true);
        let incomparable = !t.is_ancestor_or_self(vi, vj) && !t.is_ancestor_or_self(vj, vi);
        let anc_ok = common || !self.knobs.v_requires_ancestor;
        let c = self.coarsening(w);
        if anc_ok {
            let nested = self.knobs.v1_nested;
            let v1 = (0..c.depth()).any(|l| {
                let dest_part = |d| if nested { Some(c.nested_part(l, d)) } else { c.part(l, d) };
                match (c.part(l, vi), c.part(l, vj), dest_part(di), dest_part(dj)) {
                    (Some(r), Some(s), Some(dr), Some(ds)) => r < s && dr > ds,
                    _ => false,
                }
            });
            if v1 {
                return Some(Rule::V1);
            }
            let v2 = if self.knobs.v2_dfs {
                (0..c.depth()).any(|l| match (c.part(l, vi), c.part(l, vj), c.part(l, di), c.part(l, dj)) {
                    (Some(r), Some(s), pi, pj) => r < s && pi == pj && dj < di,
                    _ => false,
                })
            } else {
                let ordered = (0..c.depth()).any(|l| match (c.part(l, vi), c.part(l, vj)) {
                    (Some(r), Some(s)) => r < s,
                    _ => false,
                });
                ordered && di != dj && c.always_together(di, dj) && above(dj, w, s2) && above(w, di, s2)
            };
            if v2 {
                return Some(Rule::V2);
            }
        }
        let related = t.is_ancestor_or_self(vi, vj)
            || (self.knobs.v3_branches && incomparable && !common);
        if vi < vj
            && related
            && above(w, di, s3)
            && above(w, dj, s3)
            && ((w != vi && w != vj) || !self.knobs.v3_meet_below)
            && dj < di
        {
            return Some(Rule::V3);
        }
        if di == dj && li < lj && vi > vj {
            return Some(Rule::V4);
        }
        None
    }

    fn e2(&self, p: &Walk, vj: Vertex, lj: Label, held_j: &[Label]) -> bool {
        let from = p.from(vj).unwrap();
        let mut walks: Vec<Walk> = if self.knobs.e2_full_context {
            held_j.iter().map(|&l| self.walk(l, vj)).collect()
        } else {
            vec![self.walk(lj, vj)]
        };
        let b = walks.iter().position(|w| w.label == lj).unwrap();
        walks.push(from);
        self.beats_at(vj, &walks, walks.len() - 1, b)
    }

    /// First rule making `(a, b)` a node inversion pair given the labels
    /// they hold, reported as a label pair.
    pub fn pair_witness(&self, a: Vertex, la: &[Label], b: Vertex, lb: &[Label]) -> Option<LabelPair> {
        for &x in la {
            for &y in lb {
                if let Some(rule) = self.label_rule(x, a, y, b, lb) {
                    return Some(LabelPair { li: x, vi: a, lj: y, vj: b, rule });
                }
                if let Some(rule) = self.label_rule(y, b, x, a, la) {
                    return Some(LabelPair { li: y, vi: b, lj: x, vj: a, rule });
                }
            }
        }
        None
    }

    pub fn pair_inverted(&self, a: Vertex, la: &[Label], b: Vertex, lb: &[Label]) -> bool {
        self.pair_witness(a, la, b, lb).is_some()
    }

    /// All label inversion pairs and their node projections.
    pub fn label_inversions(&self, sigma: &Labelling) -> InversionReport {
        let t = self.tree;
        let mut report = InversionReport::default();
        for a in t.vertices() {
            for b in t.vertices().filter(|&b| b > a) {
                let (la, lb) = (sigma.at(a), sigma.at(b));
                let mut any = false;
                for &x in la {
                    for &y in lb {
                        if let Some(rule) = self.label_rule(x, a, y, b, lb) {
                            report.label_pairs.push(LabelPair { li: x, vi: a, lj: y, vj: b, rule });
                            any = true;
                        }
                        if let Some(rule) = self.label_rule(y, b, x, a, la) {
                            report.label_pairs.push(LabelPair { li: y, vi: b, lj: x, vj: a, rule });
                            any = true;
                        }
                    }
                }
                if any {
                    report.node_pairs.push(NodePair {
                        a,
                        b,
                        neighbor: t.edge_between(a, b).is_some(),
                    });
                }
            }
        }
        report
    }

    /// Node inversion pairs `(a, b)` with `a < b`.
    pub fn node_inversions(&self, sigma: &Labelling) -> Vec<(Vertex, Vertex)> {
        self.node_inversions_among(sigma.slots(), &self.tree.dfs_order())
    }

    /// Node inversion pairs between neighbours only.
    pub fn neighbor_inversions(&self, sigma: &Labelling) -> Vec<(Vertex, Vertex)> {
        self.tree
            .edges()
            .filter_map(|c| {
                let p = self.tree.parent(c).unwrap();
                self.pair_inverted(p, sigma.at(p), c, sigma.at(c)).then_some((p, c))
            })
            .collect()
    }

    /// Node inversion pairs among `vertices`, reading labels from `slots`.
    pub fn node_inversions_among(&self, slots: &[Vec<Label>], vertices: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                if self.pair_inverted(a, &slots[a.0], b, &slots[b.0]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether no pair of `vertices` is a node inversion pair.
    pub fn free_among(&self, slots: &[Vec<Label>], vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &a)| {
            vertices[i + 1..]
                .iter()
                .all(|&b| !self.pair_inverted(a, &slots[a.0], b, &slots[b.0]))
        })
    }
}
