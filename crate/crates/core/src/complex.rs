//! Faces of the labelled-forest complex, the facet order that shells its
//! skeleta, and a brute-force shelling checker.
//!
//! A face is a set of cut edges together with the label set of every
//! component of the remaining forest. Faces below a face are obtained by
//! un-cutting edges, so the complex is simplicial with one vertex per
//! `(edge, labels below the edge)` pair.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inversion::Engine;
use crate::sorter::WeakOrder;
use crate::tree::{CapacityTree, DerivedTree, EdgeSet, Label, Labelling, NodeSpec, Vertex, multiset_permutations};

/// Default cap on the number of faces enumerated at once.
pub const DEFAULT_FACE_BOUND: usize = 200_000;

/// A face: cut edges (bit `c - 1` for child endpoint `c`) and one label
/// mask (bit `l - 1` for label `l`) per component. Components are listed
/// by their top vertex, which is also their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub cut: u64,
    pub parts: Vec<u64>,
}

/// Component number of every vertex after deleting the edges in `cut`.
fn comp_of(t: &CapacityTree, cut: u64) -> Vec<usize> {
    let mut comp = vec![0; t.len()];
    let mut next = 0;
    for v in t.vertices() {
        match t.parent(v) {
            Some(p) if cut >> (v.0 - 1) & 1 == 0 => comp[v.0] = comp[p.0],
            _ => {
                comp[v.0] = next;
                next += 1;
            }
        }
    }
    comp
}

/// Top vertices of the components of `t` minus `cut`, in order.
fn tops(t: &CapacityTree, cut: u64) -> Vec<Vertex> {
    std::iter::once(t.root())
        .chain(t.edges().filter(|c| cut >> (c.0 - 1) & 1 == 1))
        .collect()
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn edge_names(t: &CapacityTree, mask: u64) -> String {
    format!("[{}]", bits(mask).map(|i| t.name(Vertex(i + 1))).join(","))
}

impl Face {
    pub fn dim(&self) -> isize {
        self.cut.count_ones() as isize - 1
    }

    /// The face below `self` keeping only the cut edges in `sub`.
    pub fn restrict(&self, t: &CapacityTree, sub: u64) -> Face {
        debug_assert_eq!(sub & !self.cut, 0);
        let comp = comp_of(t, sub);
        let mut parts = vec![0u64; sub.count_ones() as usize + 1];
        for (top, &mask) in tops(t, self.cut).into_iter().zip(&self.parts) {
            parts[comp[top.0]] |= mask;
        }
        Face { cut: sub, parts }
    }

    /// The facet of the full complex given by a labelling.
    pub fn from_labelling(t: &CapacityTree, l: &Labelling) -> Face {
        let mask = |ls: &[Label]| ls.iter().fold(0u64, |m, &x| m | 1 << (x - 1));
        Face {
            cut: t.all_edges().mask(),
            parts: t.vertices().map(|v| mask(l.at(v))).collect(),
        }
    }

    /// `[cut edges] labels|labels|...`, components in order.
    pub fn render(&self, t: &CapacityTree) -> String {
        let parts = self.parts.iter().map(|&m| bits(m).map(|i| i + 1).join(",")).join("|");
        format!("{} {}", edge_names(t, self.cut), parts)
    }
}

fn fact(k: u32) -> u128 {
    (1..=k as u128).product()
}

fn component_caps(t: &CapacityTree, cut: u64) -> Vec<u32> {
    let comp = comp_of(t, cut);
    let mut caps = vec![0u32; cut.count_ones() as usize + 1];
    for v in t.vertices() {
        caps[comp[v.0]] += t.cap(v);
    }
    caps
}

/// Number of faces with cut `cut`.
pub fn faces_with_cut(t: &CapacityTree, cut: u64) -> u128 {
    component_caps(t, cut)
        .into_iter()
        .fold(fact(t.total_capacity()), |acc, c| acc / fact(c))
}

/// Every face with the given cut.
pub fn faces_of_cut(t: &CapacityTree, cut: u64) -> Vec<Face> {
    let caps = component_caps(t, cut);
    let word: Vec<usize> = caps
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
        .collect();
    multiset_permutations(&word)
        .into_iter()
        .map(|places| {
            let mut parts = vec![0u64; caps.len()];
            for (l, i) in places.into_iter().enumerate() {
                parts[i] |= 1 << l;
            }
            Face { cut, parts }
        })
        .collect()
}

fn check_labels(t: &CapacityTree) -> Result<()> {
    if t.total_capacity() > 64 {
        return Err(Error::Precondition("faces support at most 64 labels".into()));
    }
    Ok(())
}

/// Cuts with `size` edges, in lexicographic order of their edge words.
pub fn cuts_of_size(t: &CapacityTree, size: usize) -> Vec<u64> {
    (0..t.edge_count())
        .combinations(size)
        .map(|w| w.into_iter().fold(0u64, |m, i| m | 1 << i))
        .collect()
}

fn bounded(count: u128, bound: usize, what: &str) -> Result<()> {
    if count > bound as u128 {
        return Err(Error::BoundExceeded { what: format!("{count} {what}"), bound });
    }
    Ok(())
}

/// Facets of the full complex (`skeleton = None`, one per labelling) or
/// of its `k`-skeleton (all faces cutting `k + 1` edges).
pub fn enumerate_facets(t: &CapacityTree, skeleton: Option<usize>, bound: usize) -> Result<Vec<Face>> {
    check_labels(t)?;
    let size = skeleton.map_or(t.edge_count(), |k| k + 1);
    if size > t.edge_count() {
        return Err(Error::Precondition(format!(
            "the tree has {} edges, too few for a {}-skeleton",
            t.edge_count(),
            size as isize - 1
        )));
    }
    let cuts = cuts_of_size(t, size);
    bounded(cuts.iter().map(|&c| faces_with_cut(t, c)).sum(), bound, "facets")?;
    Ok(cuts.into_iter().flat_map(|c| faces_of_cut(t, c)).collect())
}

/// All faces, the empty face included, grouped by number of cut edges.
pub fn all_faces(t: &CapacityTree, skeleton: Option<usize>, bound: usize) -> Result<Vec<Vec<Face>>> {
    check_labels(t)?;
    let top = skeleton.map_or(t.edge_count(), |k| (k + 1).min(t.edge_count()));
    let count: u128 = (0..=top)
        .flat_map(|s| cuts_of_size(t, s))
        .map(|c| faces_with_cut(t, c))
        .sum();
    bounded(count, bound, "faces")?;
    Ok((0..=top)
        .map(|s| cuts_of_size(t, s).into_iter().flat_map(|c| faces_of_cut(t, c)).collect())
        .collect())
}

/// The star whose complex is the chessboard complex `M_{m,n}`: `m` unit
/// leaves around a centre of capacity `n - m`, rooted at a leaf.
pub fn chessboard_tree(m: u32, n: u32) -> Result<CapacityTree> {
    if m == 0 || m > n {
        return Err(Error::Precondition(format!("chessboard needs 1 <= m <= n, got m={m} n={n}")));
    }
    let mut specs = vec![NodeSpec::new("l1", None, 1), NodeSpec::new("c", Some("l1"), n - m)];
    for i in 2..=m {
        specs.push(NodeSpec::new(&format!("l{i}"), Some("c"), 1));
    }
    CapacityTree::from_specs(&specs)
}

/// Sort key of a facet: cut edges outside `E`, the word of cut edges in
/// `E`, the position of the cut, and the position in a linear extension of
/// the weak order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetKey {
    pub c: usize,
    pub s: Vec<usize>,
    pub cut_id: usize,
    pub weak_rank: usize,
}

/// The first two key coordinates of a cut: `|cut \ E|` and the sorted
/// edge-index word of `cut ∩ E`.
pub fn cut_coordinates(cut: u64, e: u64) -> (usize, Vec<usize>) {
    ((cut & !e).count_ones() as usize, bits(cut & e).collect())
}

#[derive(Clone, Debug)]
pub struct ShellingEntry {
    pub face: Face,
    pub key: FacetKey,
    /// Edge mask of the minimal new face.
    pub gm: u64,
}

#[derive(Clone, Debug)]
pub struct ShellingCertificate {
    pub tree: CapacityTree,
    pub edges: EdgeSet,
    pub entries: Vec<ShellingEntry>,
}

impl ShellingCertificate {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn facets(&self) -> Vec<Face> {
        self.entries.iter().map(|e| e.face.clone()).collect()
    }

    /// Facets whose minimal new face is the whole facet; each adds one
    /// top-dimensional sphere.
    pub fn spanning_count(&self) -> usize {
        self.entries.iter().filter(|e| e.gm == e.face.cut).count()
    }

    /// `facet <idx> key=(c=..,S=..,cut=..,rank=..) Gm=.. F=..` lines.
    pub fn render(&self) -> String {
        let t = &self.tree;
        let mut out = String::new();
        for (i, en) in self.entries.iter().enumerate() {
            let s = en.key.s.iter().fold(0u64, |m, &b| m | 1 << b);
            out.push_str(&format!(
                "facet {} key=(c={},S={},cut={},rank={}) Gm={} F={}\n",
                i + 1,
                en.key.c,
                edge_names(t, s),
                en.key.cut_id,
                en.key.weak_rank,
                edge_names(t, en.gm),
                en.face.render(t)
            ));
        }
        out
    }
}

/// The weak order of one derived tree, read off once and shared by every
/// cut that produces it.
struct Block {
    /// Ambient vertex behind each vertex of the induced subtree.
    original: Vec<Vertex>,
    derived: DerivedTree,
    /// Linear-extension rank and neighbouring-inversion edges (ambient
    /// mask) of every labelling of the derived tree.
    info: HashMap<Labelling, (usize, u64)>,
}

fn mix(seed: u64, key: &[usize], kept: u64) -> u64 {
    key.iter()
        .fold(seed ^ kept.rotate_left(17), |h, &v| h.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(v as u64 + 1))
}

impl Block {
    fn new(t: &CapacityTree, u: &[Vertex], kept_ambient: u64, seed: Option<u64>, bound: usize) -> Result<Block> {
        let sub = t.subtree_on(u);
        let kept: EdgeSet = sub
            .tree
            .edges()
            .filter(|c| kept_ambient >> (sub.original[c.0].0 - 1) & 1 == 1)
            .collect();
        let derived = sub.tree.derive(&kept);
        let d = &derived.tree;
        let engine = Engine::new(d);
        let w = WeakOrder::build(&engine, bound)?;
        let key: Vec<usize> = u.iter().map(|v| v.0).collect();
        let order = w.linear_extension(d, seed.map(|s| mix(s, &key, kept_ambient)))?;
        let ambient_edge = |c: Vertex| sub.original[derived.members[c.0][0].0].0 - 1;
        let info = order
            .into_iter()
            .enumerate()
            .map(|(rank, i)| {
                let l = &w.nodes[i];
                let inv = engine
                    .neighbor_inversions(l)
                    .into_iter()
                    .fold(0u64, |m, (_, c)| m | 1 << ambient_edge(c));
                (l.clone(), (rank, inv))
            })
            .collect();
        Ok(Block { original: sub.original, derived, info })
    }

    /// The derived-tree labelling a face induces, with labels renumbered
    /// in order, together with the mask of labels involved.
    fn labelling(&self, face: &Face, top_index: &[usize]) -> (Labelling, u64) {
        let d = &self.derived;
        let masks: Vec<u64> = d
            .members
            .iter()
            .map(|ms| face.parts[top_index[self.original[ms[0].0].0]])
            .collect();
        let all = masks.iter().fold(0, |a, m| a | m);
        let rank = |l: usize| (all & ((1u64 << l) - 1)).count_ones() + 1;
        let slots = masks.iter().map(|&m| bits(m).map(rank).collect()).collect();
        (Labelling::new(&d.tree, slots).expect("face restricts to a labelling"), all)
    }
}

/// The facet order of the `(|E| - 1)`-skeleton by key `(c, S, cut, rank)`,
/// with the minimal new face of each facet. `seed` picks a random linear
/// extension of each weak order instead of the text-ordered one.
pub fn shelling_order(t: &CapacityTree, e: &EdgeSet, seed: Option<u64>, bound: usize) -> Result<ShellingCertificate> {
    check_labels(t)?;
    if !t.validate_edge_set(e) {
        return Err(Error::Precondition(format!(
            "edge set {} does not derive distributable trees",
            e.display(t)
        )));
    }
    let emask = e.mask();
    let cuts = cuts_of_size(t, e.len());
    bounded(cuts.iter().map(|&c| faces_with_cut(t, c)).sum(), bound, "facets")?;
    let mut blocks: HashMap<(Vec<Vertex>, u64), Block> = HashMap::new();
    let mut entries = Vec::new();
    for (cut_id, &cut) in cuts.iter().enumerate() {
        let (c, s) = cut_coordinates(cut, emask);
        let outside = EdgeSet::from_mask(cut & !emask, t);
        let us = t.components(&outside);
        for u in &us {
            let key = (u.clone(), cut & emask);
            if let Entry::Vacant(slot) = blocks.entry(key) {
                slot.insert(Block::new(t, u, cut & emask, seed, bound)?);
            }
        }
        let mut top_index = vec![usize::MAX; t.len()];
        for (i, v) in tops(t, cut).into_iter().enumerate() {
            top_index[v.0] = i;
        }
        let later = match bits(emask & !cut).next() {
            Some(first_missing) => emask & cut & !((2u64 << first_missing) - 1),
            None => 0,
        };
        let mut rows: Vec<(Vec<u64>, Vec<usize>, u64, Face)> = faces_of_cut(t, cut)
            .into_iter()
            .map(|face| {
                let mut masks = Vec::new();
                let mut ranks = Vec::new();
                let mut inv = 0u64;
                for u in &us {
                    let b = &blocks[&(u.clone(), cut & emask)];
                    let (l, all) = b.labelling(&face, &top_index);
                    let (rank, i) = b.info[&l];
                    masks.push(all);
                    ranks.push(rank);
                    inv |= i;
                }
                (masks, ranks, inv, face)
            })
            .collect();
        rows.sort();
        for (weak_rank, (_, _, inv, face)) in rows.into_iter().enumerate() {
            let gm = (cut & !emask) | later | (inv & cut & emask);
            entries.push(ShellingEntry {
                face,
                key: FacetKey { c, s: s.clone(), cut_id, weak_rank },
                gm,
            });
        }
    }
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(ShellingCertificate { tree: t.clone(), edges: e.clone(), entries })
}

/// The full complex of a distributable tree, facets ordered by a linear
/// extension of the weak order.
pub fn shell_full_distributable(t: &CapacityTree, seed: Option<u64>, bound: usize) -> Result<ShellingCertificate> {
    if !t.is_distributable() {
        return Err(Error::Precondition("tree is not distributable".into()));
    }
    shelling_order(t, &t.all_edges(), seed, bound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingFailure {
    /// A face shared with earlier facets lies in no shared face of
    /// codimension one.
    NotPure { facet: usize, face: Face },
    /// The new faces are not exactly the faces containing the claimed
    /// minimal new face.
    WrongMinimalFace { facet: usize, face: Face, claimed: u64 },
}

impl ShellingFailure {
    pub fn render(&self, t: &CapacityTree) -> String {
        match self {
            ShellingFailure::NotPure { facet, face } => format!(
                "facet {}: shared face {} lies in no shared codimension-one face",
                facet + 1,
                face.render(t)
            ),
            ShellingFailure::WrongMinimalFace { facet, face, claimed } => format!(
                "facet {}: face {} contradicts the minimal new face {}",
                facet + 1,
                face.render(t),
                edge_names(t, *claimed)
            ),
        }
    }
}

/// For every face of every facet, the first facet containing it.
fn first_owner(t: &CapacityTree, facets: &[Face]) -> HashMap<Face, usize> {
    let mut owner: HashMap<Face, usize> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for sub in submasks(f.cut) {
            owner.entry(f.restrict(t, sub)).or_insert(i);
        }
    }
    owner
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & mask);
        Some(cur)
    })
}

/// Checks, face by face, that each facet meets the earlier ones in a pure
/// subcomplex of codimension one. With `claimed`, also checks that the new
/// faces of facet `m` are exactly those containing `claimed[m]`.
pub fn verify_order(t: &CapacityTree, facets: &[Face], claimed: Option<&[u64]>) -> Option<ShellingFailure> {
    let owner = first_owner(t, facets);
    let failures: Vec<Option<ShellingFailure>> = facets
        .par_iter()
        .enumerate()
        .map(|(m, f)| {
            let shared = |sub: u64| owner[&f.restrict(t, sub)] < m;
            let drop: u64 = bits(f.cut).filter(|&b| shared(f.cut & !(1 << b))).fold(0, |a, b| a | 1 << b);
            for sub in submasks(f.cut) {
                if shared(sub) && (f.cut & !sub & drop) == 0 {
                    return Some(ShellingFailure::NotPure { facet: m, face: f.restrict(t, sub) });
                }
            }
            let gm = claimed?[m];
            submasks(f.cut)
                .find(|&sub| shared(sub) == (sub & gm == gm))
                .map(|sub| ShellingFailure::WrongMinimalFace { facet: m, face: f.restrict(t, sub), claimed: gm })
        })
        .collect();
    failures.into_iter().flatten().next()
}

/// Brute-force check of a certificate: shelling condition and minimal new
/// faces. Independent of how the order and the faces `G_m` were built.
pub fn verify_shelling(cert: &ShellingCertificate) -> Option<ShellingFailure> {
    let gms: Vec<u64> = cert.entries.iter().map(|e| e.gm).collect();
    verify_order(&cert.tree, &cert.facets(), Some(&gms))
}
