//! Rooted planar capacity trees.
//!
//! Vertices are stored in depth-first preorder, so a vertex index doubles as
//! its depth-first-search position and every subtree occupies a contiguous
//! index range. Edges are named by their child endpoint.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A vertex of a [`CapacityTree`], indexed by depth-first preorder position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Labels are the integers `1..=total_capacity`.
pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CapacityTree {
    names: Vec<String>,
    caps: Vec<u32>,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    subtree_end: Vec<usize>,
    depth: Vec<usize>,
    total: u32,
}

/// A set of tree edges, each edge named by its child endpoint. Iteration
/// order is depth-first discovery order of the child endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(BTreeSet<Vertex>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn from_children<I: IntoIterator<Item = Vertex>>(it: I) -> Self {
        EdgeSet(it.into_iter().collect())
    }

    pub fn from_mask(mask: u64, t: &CapacityTree) -> Self {
        EdgeSet(t.edges().filter(|c| mask >> (c.0 - 1) & 1 == 1).collect())
    }

    /// Bit `c - 1` is set for the edge whose child endpoint is `c`.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, c| m | 1 << (c.0 - 1))
    }

    pub fn contains(&self, child: Vertex) -> bool {
        self.0.contains(&child)
    }

    pub fn insert(&mut self, child: Vertex) -> bool {
        self.0.insert(child)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Comma separated child-endpoint names, e.g. `c,a`.
    pub fn display(&self, t: &CapacityTree) -> String {
        self.iter().map(|c| t.name(c)).join(",")
    }

    /// Parses the CLI form `c,a` (child endpoint names).
    pub fn parse(text: &str, t: &CapacityTree) -> Result<EdgeSet> {
        let mut set = EdgeSet::new();
        for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let v = t
                .vertex_by_name(name)
                .ok_or_else(|| Error::Input(format!("unknown vertex `{name}` in edge list")))?;
            if t.parent(v).is_none() {
                return Err(Error::Input(format!(
                    "`{name}` is the root and names no edge"
                )));
            }
            set.insert(v);
        }
        Ok(set)
    }
}

impl FromIterator<Vertex> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

/// One record of a tree description: name, parent name, capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSpec {
    pub name: String,
    pub parent: Option<String>,
    pub cap: u32,
}

impl NodeSpec {
    pub fn new(name: &str, parent: Option<&str>, cap: u32) -> Self {
        NodeSpec {
            name: name.to_string(),
            parent: parent.map(str::to_string),
            cap,
        }
    }
}

impl CapacityTree {
    /// Builds a tree from records; child order is record order.
    pub fn from_specs(specs: &[NodeSpec]) -> Result<CapacityTree> {
        if specs.is_empty() {
            return Err(Error::Input("empty tree description".into()));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.name.as_str(), i).is_some() {
                return Err(Error::Input(format!("duplicate vertex `{}`", s.name)));
            }
        }
        let roots: Vec<usize> = (0..specs.len())
            .filter(|&i| specs[i].parent.is_none())
            .collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => return Err(Error::Input("no root (parent=-) given".into())),
            _ => {
                return Err(Error::Input(format!(
                    "multiple roots: {}",
                    roots.iter().map(|&i| &specs[i].name).join(", ")
                )))
            }
        };
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); specs.len()];
        for (i, s) in specs.iter().enumerate() {
            if let Some(p) = &s.parent {
                let pi = *index.get(p.as_str()).ok_or_else(|| {
                    Error::Input(format!("vertex `{}` has unknown parent `{p}`", s.name))
                })?;
                if pi == i {
                    return Err(Error::Input(format!("vertex `{}` is its own parent", s.name)));
                }
                kids[pi].push(i);
            }
        }
        let mut order = Vec::with_capacity(specs.len());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(kids[v].iter().rev());
        }
        if order.len() != specs.len() {
            return Err(Error::Input(
                "tree is disconnected or contains a cycle".into(),
            ));
        }
        let mut pos = vec![0; specs.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let names = order.iter().map(|&o| specs[o].name.clone()).collect();
        let caps = order.iter().map(|&o| specs[o].cap).collect();
        let parent = order
            .iter()
            .map(|&o| {
                specs[o]
                    .parent
                    .as_ref()
                    .map(|p| Vertex(pos[index[p.as_str()]]))
            })
            .collect();
        let children = order
            .iter()
            .map(|&o| kids[o].iter().map(|&k| Vertex(pos[k])).collect())
            .collect();
        Self::assemble(names, caps, parent, children)
    }

    fn assemble(
        names: Vec<String>,
        caps: Vec<u32>,
        parent: Vec<Option<Vertex>>,
        children: Vec<Vec<Vertex>>,
    ) -> Result<CapacityTree> {
        let n = names.len();
        let total: u32 = caps.iter().sum();
        if total == 0 {
            return Err(Error::Input("total capacity must be at least one".into()));
        }
        let mut subtree_end = vec![0; n];
        for v in (0..n).rev() {
            subtree_end[v] = children[v].last().map_or(v + 1, |c| subtree_end[c.0]);
        }
        let mut depth = vec![0; n];
        for v in 1..n {
            depth[v] = depth[parent[v].expect("non-root has a parent").0] + 1;
        }
        Ok(CapacityTree {
            names,
            caps,
            parent,
            children,
            subtree_end,
            depth,
            total,
        })
    }

    /// Parses the `.ctree` format: `node <id> parent=<id|-> cap=<n>` per line,
    /// `#` comments, root first, child order = line order.
    pub fn parse(text: &str) -> Result<CapacityTree> {
        let mut specs = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Input(format!("line {}: malformed record `{}`", lineno + 1, raw.trim()));
            let mut words = line.split_whitespace();
            if words.next() != Some("node") {
                return Err(bad());
            }
            let name = words.next().ok_or_else(bad)?;
            let parent = words
                .next()
                .and_then(|w| w.strip_prefix("parent="))
                .ok_or_else(bad)?;
            let cap_text = words
                .next()
                .and_then(|w| w.strip_prefix("cap="))
                .ok_or_else(bad)?;
            if words.next().is_some() {
                return Err(bad());
            }
            let cap: u32 = cap_text.parse().map_err(|_| {
                Error::Input(format!(
                    "line {}: capacity must be a nonnegative integer, got `{cap_text}`",
                    lineno + 1
                ))
            })?;
            let parent = match parent {
                "-" => None,
                p => {
                    if !seen.contains(p) {
                        return Err(Error::Input(format!(
                            "line {}: parent `{p}` must be declared before `{name}`",
                            lineno + 1
                        )));
                    }
                    Some(p)
                }
            };
            if parent.is_none() && !specs.is_empty() {
                return Err(Error::Input(format!(
                    "line {}: multiple roots (`{name}` has parent=-)",
                    lineno + 1
                )));
            }
            seen.insert(name.to_string());
            specs.push(NodeSpec::new(name, parent, cap));
        }
        Self::from_specs(&specs)
    }

    /// Renders the tree back into `.ctree` text.
    pub fn to_ctree(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let parent = self.parent(v).map_or("-".to_string(), |p| self.name(p).to_string());
            out.push_str(&format!("node {} parent={} cap={}\n", self.name(v), parent, self.cap(v)));
        }
        out
    }

    /// A path `v1 - v2 - ...` rooted at `v1` with the given capacities.
    pub fn path(caps: &[u32]) -> CapacityTree {
        let specs: Vec<NodeSpec> = caps
            .iter()
            .enumerate()
            .map(|(i, &c)| NodeSpec {
                name: format!("v{}", i + 1),
                parent: (i > 0).then(|| format!("v{i}")),
                cap: c,
            })
            .collect();
        Self::from_specs(&specs).expect("path is a valid tree")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn root(&self) -> Vertex {
        Vertex(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + Clone {
        (0..self.len()).map(Vertex)
    }

    /// Edges by child endpoint, in depth-first order.
    pub fn edges(&self) -> impl Iterator<Item = Vertex> + Clone {
        (1..self.len()).map(Vertex)
    }

    pub fn edge_count(&self) -> usize {
        self.len() - 1
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name).map(Vertex)
    }

    pub fn cap(&self, v: Vertex) -> u32 {
        self.caps[v.0]
    }

    pub fn total_capacity(&self) -> u32 {
        self.total
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v.0]
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v.0]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v.0]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.children[v.0].len() + usize::from(self.parent[v.0].is_some())
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) <= 1
    }

    pub fn leaf_count(&self) -> usize {
        self.vertices().filter(|&v| self.is_leaf(v)).count()
    }

    /// Whether the root is a leaf, the convention required for the
    /// first-children and half-degree edge sets.
    pub fn root_is_leaf(&self) -> bool {
        self.is_leaf(self.root())
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.parent[v.0].into_iter().chain(self.children[v.0].iter().copied())
    }

    /// `a` is an ancestor of `d` (or equal to it).
    pub fn is_ancestor_or_self(&self, a: Vertex, d: Vertex) -> bool {
        a.0 <= d.0 && d.0 < self.subtree_end[a.0]
    }

    pub fn in_subtree(&self, root: Vertex, v: Vertex) -> bool {
        self.is_ancestor_or_self(root, v)
    }

    /// The vertices of the subtree rooted at `v`, in preorder.
    pub fn subtree(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        (v.0..self.subtree_end[v.0]).map(Vertex)
    }

    /// The child endpoint of the edge joining two neighbours.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<Vertex> {
        if self.parent(b) == Some(a) {
            Some(b)
        } else if self.parent(a) == Some(b) {
            Some(a)
        } else {
            None
        }
    }

    /// The unique vertex path from `a` to `b`, both included.
    pub fn path_between(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let mut up = vec![a];
        let mut down = vec![b];
        let (mut x, mut y) = (a, b);
        while self.depth(x) > self.depth(y) {
            x = self.parent(x).unwrap();
            up.push(x);
        }
        while self.depth(y) > self.depth(x) {
            y = self.parent(y).unwrap();
            down.push(y);
        }
        while x != y {
            x = self.parent(x).unwrap();
            y = self.parent(y).unwrap();
            up.push(x);
            down.push(y);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        up
    }

    /// Lowest common ancestor.
    pub fn lca(&self, a: Vertex, b: Vertex) -> Vertex {
        self.path_between(a, b)
            .into_iter()
            .min_by_key(|&v| self.depth(v))
            .unwrap()
    }

    pub fn distance(&self, a: Vertex, b: Vertex) -> usize {
        self.path_between(a, b).len() - 1
    }

    /// Preorder traversal, children in stored order. Because vertices are
    /// stored in preorder this is simply the index order.
    pub fn dfs_order(&self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// `dest(i)` for every label: consecutive labels dealt out along the
    /// depth-first order, `cap(v)` of them to each vertex.
    pub fn destinations(&self) -> Vec<Vertex> {
        let mut dest = Vec::with_capacity(self.total as usize);
        for v in self.vertices() {
            dest.extend(std::iter::repeat_n(v, self.cap(v) as usize));
        }
        dest
    }

    pub fn destination(&self, label: Label) -> Vertex {
        let mut seen = 0;
        for v in self.vertices() {
            seen += self.cap(v);
            if label <= seen {
                return v;
            }
        }
        panic!("label {label} out of range 1..={}", self.total)
    }

    /// `cap(v) >= deg(v) - 1` at every vertex.
    pub fn is_distributable(&self) -> bool {
        self.vertices()
            .all(|v| self.cap(v) as usize + 1 >= self.degree(v))
    }

    /// Connected components of the forest obtained by deleting `cut`,
    /// each sorted, listed by smallest member.
    pub fn components(&self, cut: &EdgeSet) -> Vec<Vec<Vertex>> {
        let comp = self.component_index(cut);
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for v in self.vertices() {
            out[comp[v.0]].push(v);
        }
        out
    }

    /// Component index of each vertex after deleting `cut`. Components are
    /// numbered by their top vertex in preorder.
    pub fn component_index(&self, cut: &EdgeSet) -> Vec<usize> {
        let mut comp = vec![0; self.len()];
        let mut next = 0;
        for v in self.vertices() {
            match self.parent(v) {
                Some(p) if !cut.contains(v) => comp[v.0] = comp[p.0],
                _ => {
                    comp[v.0] = next;
                    next += 1;
                }
            }
        }
        comp
    }

    /// The tree `(T', m')` whose vertices are the components of `self`
    /// minus `kept` and whose edges are exactly `kept`. The component of the
    /// old root is the new root; children are ordered by first discovery.
    pub fn derive(&self, kept: &EdgeSet) -> DerivedTree {
        let comp = self.component_index(kept);
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); k];
        for v in self.vertices() {
            members[comp[v.0]].push(v);
        }
        let specs: Vec<NodeSpec> = members
            .iter()
            .map(|ms| {
                let top = ms[0];
                NodeSpec {
                    name: ms.iter().map(|&v| self.name(v)).join("+"),
                    parent: self
                        .parent(top)
                        .map(|p| members[comp[p.0]].iter().map(|&v| self.name(v)).join("+")),
                    cap: ms.iter().map(|&v| self.cap(v)).sum(),
                }
            })
            .collect();
        let tree = CapacityTree::from_specs(&specs).expect("derived tree is a tree");
        // Components are numbered by top vertex, which is already a preorder
        // of the derived tree.
        debug_assert!(members
            .iter()
            .enumerate()
            .all(|(i, ms)| tree.name(Vertex(i)) == ms.iter().map(|&v| self.name(v)).join("+")));
        DerivedTree {
            tree,
            component_of: comp.into_iter().map(Vertex).collect(),
            members,
        }
    }

    /// Checks that merging any two neighbours of a distributable tree
    /// gives a distributable tree whose merged vertex has `cap >= deg`.
    pub fn check_merge_closure(&self) -> Result<bool> {
        if !self.is_distributable() {
            return Err(Error::Precondition(
                "merge closure is only defined for distributable trees".into(),
            ));
        }
        for e in self.edges() {
            let kept: EdgeSet = self.edges().filter(|&c| c != e).collect();
            let d = self.derive(&kept);
            let merged = d.component_of[e.0];
            if !d.tree.is_distributable() || (d.tree.cap(merged) as usize) < d.tree.degree(merged) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Edges from each internal vertex to its first child.
    pub fn first_children_edges(&self) -> Result<EdgeSet> {
        self.require_leaf_root()?;
        Ok(self
            .vertices()
            .filter_map(|v| self.children(v).first().copied())
            .collect())
    }

    /// Edges from each vertex to its first `floor((deg - 1) / 2)` children,
    /// plus the edge from the root to its only child.
    pub fn half_degree_edges(&self) -> Result<EdgeSet> {
        self.require_leaf_root()?;
        let mut set = EdgeSet::new();
        for v in self.vertices() {
            if v == self.root() {
                set.0.extend(self.children(v).first());
                continue;
            }
            let take = self.degree(v).saturating_sub(1) / 2;
            set.0.extend(self.children(v).iter().take(take));
        }
        Ok(set)
    }

    /// Sum over vertices of `floor((deg - 1) / 2)`.
    pub fn half_degree_index(&self) -> usize {
        self.vertices()
            .map(|v| self.degree(v).saturating_sub(1) / 2)
            .sum()
    }

    fn require_leaf_root(&self) -> Result<()> {
        if self.len() > 1 && !self.root_is_leaf() {
            return Err(Error::Precondition(format!(
                "root `{}` is not a leaf",
                self.name(self.root())
            )));
        }
        Ok(())
    }

    /// The capacity hypothesis for shelling a skeleton: `(T, E)` derives a
    /// distributable tree, and so does `(U, E|U)` for every component `U`
    /// of `T` minus any set of edges disjoint from `E`. Checked exhaustively.
    pub fn validate_edge_set(&self, e: &EdgeSet) -> bool {
        self.edge_set_violation(e).is_none()
    }

    /// The first component `U` (with the removed edges producing it) whose
    /// derived tree is not distributable. `U` is the whole tree when
    /// `(T, E)` itself fails.
    pub fn edge_set_violation(&self, e: &EdgeSet) -> Option<EdgeSetViolation> {
        let others: Vec<Vertex> = self.edges().filter(|&c| !e.contains(c)).collect();
        for mask in 0u64..(1 << others.len()) {
            let removed: EdgeSet = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            for comp in self.components(&removed) {
                let sub = self.subtree_on(&comp);
                let kept: EdgeSet = sub
                    .tree
                    .edges()
                    .filter(|&c| e.contains(sub.original[c.0]))
                    .collect();
                if !sub.tree.derive(&kept).tree.is_distributable() {
                    return Some(EdgeSetViolation { removed, component: comp });
                }
            }
        }
        None
    }

    /// The induced subtree on a connected vertex set, rooted at its top vertex.
    pub fn subtree_on(&self, vertices: &[Vertex]) -> InducedSubtree {
        let set: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let specs: Vec<NodeSpec> = set
            .iter()
            .map(|&v| NodeSpec {
                name: self.name(v).to_string(),
                parent: self
                    .parent(v)
                    .filter(|p| set.contains(p))
                    .map(|p| self.name(p).to_string()),
                cap: self.cap(v),
            })
            .collect();
        let tree = CapacityTree::from_specs(&specs).expect("connected vertex set");
        let original = set.into_iter().collect();
        InducedSubtree { tree, original }
    }

    /// Every connected vertex subset (as sorted vertex lists).
    pub fn connected_subsets(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        for cut_mask in 0u64..(1 << self.edge_count()) {
            let cut = EdgeSet::from_mask(cut_mask, self);
            for comp in self.components(&cut) {
                out.push(comp);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for CapacityTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ctree())
    }
}

/// A component whose derived tree lacks capacity, with the edges removed
/// to isolate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSetViolation {
    pub removed: EdgeSet,
    pub component: Vec<Vertex>,
}

/// A derived tree together with the map from original vertices to components.
#[derive(Clone, Debug)]
pub struct DerivedTree {
    pub tree: CapacityTree,
    pub component_of: Vec<Vertex>,
    pub members: Vec<Vec<Vertex>>,
}

/// A subtree induced on a connected vertex set.
#[derive(Clone, Debug)]
pub struct InducedSubtree {
    pub tree: CapacityTree,
    /// `original[i]` is the vertex of the ambient tree behind subtree vertex `i`.
    pub original: Vec<Vertex>,
}

/// An assignment of labels to vertices, `cap(v)` labels at each `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    slots: Vec<Vec<Label>>,
}

impl Labelling {
    pub fn new(t: &CapacityTree, mut slots: Vec<Vec<Label>>) -> Result<Labelling> {
        if slots.len() != t.len() {
            return Err(Error::Input(format!(
                "labelling has {} vertices, tree has {}",
                slots.len(),
                t.len()
            )));
        }
        let mut seen = vec![false; t.total_capacity() as usize + 1];
        for (v, s) in slots.iter_mut().enumerate() {
            s.sort_unstable();
            if s.len() != t.cap(Vertex(v)) as usize {
                return Err(Error::Input(format!(
                    "vertex `{}` holds {} labels but has capacity {}",
                    t.name(Vertex(v)),
                    s.len(),
                    t.cap(Vertex(v))
                )));
            }
            for &l in s.iter() {
                if l == 0 || l > t.total_capacity() || seen[l as usize] {
                    return Err(Error::Input(format!("label {l} is out of range or repeated")));
                }
                seen[l as usize] = true;
            }
        }
        Ok(Labelling { slots })
    }

    /// Every label at its destination.
    pub fn sorted(t: &CapacityTree) -> Labelling {
        let mut slots = vec![Vec::new(); t.len()];
        for (i, d) in t.destinations().into_iter().enumerate() {
            slots[d.0].push(i as Label + 1);
        }
        Labelling { slots }
    }

    /// Builds from a label-to-vertex map (index `label - 1`).
    pub fn from_positions(t: &CapacityTree, pos: &[Vertex]) -> Result<Labelling> {
        let mut slots = vec![Vec::new(); t.len()];
        for (i, v) in pos.iter().enumerate() {
            slots[v.0].push(i as Label + 1);
        }
        Labelling::new(t, slots)
    }

    pub fn at(&self, v: Vertex) -> &[Label] {
        &self.slots[v.0]
    }

    pub fn slots(&self) -> &[Vec<Label>] {
        &self.slots
    }

    pub fn positions(&self) -> Vec<Vertex> {
        let n: usize = self.slots.iter().map(Vec::len).sum();
        let mut pos = vec![Vertex(0); n];
        for (v, s) in self.slots.iter().enumerate() {
            for &l in s {
                pos[l as usize - 1] = Vertex(v);
            }
        }
        pos
    }

    pub fn is_sorted(&self, t: &CapacityTree) -> bool {
        *self == Labelling::sorted(t)
    }

    /// Replaces the labels of two vertices.
    pub fn with_pair(&self, a: Vertex, la: Vec<Label>, b: Vertex, lb: Vec<Label>) -> Labelling {
        let mut slots = self.slots.clone();
        slots[a.0] = la;
        slots[b.0] = lb;
        slots[a.0].sort_unstable();
        slots[b.0].sort_unstable();
        Labelling { slots }
    }

    /// All labellings of `t` in lexicographic order of the label-to-vertex
    /// word (multiset permutations of the sorted word).
    pub fn enumerate(t: &CapacityTree) -> Vec<Labelling> {
        let word: Vec<Vertex> = t.destinations();
        multiset_permutations(&word)
            .into_iter()
            .map(|pos| Labelling::from_positions(t, &pos).expect("valid by construction"))
            .collect()
    }

    /// Number of labellings: the multinomial `N! / prod cap(v)!`.
    pub fn count(t: &CapacityTree) -> u128 {
        let fact = |k: u32| (1..=k as u128).product::<u128>();
        t.vertices().fold(fact(t.total_capacity()), |acc, v| acc / fact(t.cap(v)))
    }

    /// One `assign <id> = {..}` line per vertex.
    pub fn render(&self, t: &CapacityTree) -> String {
        t.vertices()
            .map(|v| format!("assign {} = {{{}}}\n", t.name(v), self.at(v).iter().join(",")))
            .collect()
    }

    /// Compact single-line form, e.g. `r:1 c:2,3 a:4 b:5`.
    pub fn compact(&self, t: &CapacityTree) -> String {
        t.vertices()
            .map(|v| format!("{}:{}", t.name(v), self.at(v).iter().join(",")))
            .join(" ")
    }

    /// Parses `assign <id> = {k1,k2,...}` lines without requiring every
    /// vertex to appear. Used for labels on a component.
    pub fn parse_partial(text: &str, t: &CapacityTree) -> Result<BTreeMap<Vertex, Vec<Label>>> {
        let mut slots: BTreeMap<Vertex, Vec<Label>> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Input(format!("line {}: malformed assignment `{}`", lineno + 1, raw.trim()));
            let rest = line.strip_prefix("assign").ok_or_else(bad)?;
            let (name, set) = rest.split_once('=').ok_or_else(bad)?;
            let v = t
                .vertex_by_name(name.trim())
                .ok_or_else(|| Error::Input(format!("line {}: unknown vertex `{}`", lineno + 1, name.trim())))?;
            let inner = set
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(bad)?;
            let labels = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<Label>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if slots.insert(v, labels).is_some() {
                return Err(Error::Input(format!("vertex `{}` assigned twice", t.name(v))));
            }
        }
        Ok(slots)
    }

    /// Parses `assign <id> = {k1,k2,...}` lines.
    pub fn parse(text: &str, t: &CapacityTree) -> Result<Labelling> {
        let mut slots = Labelling::parse_partial(text, t)?;
        let slots = t
            .vertices()
            .map(|v| slots.remove(&v).unwrap_or_default())
            .collect();
        Labelling::new(t, slots)
    }
}

/// All distinct permutations of a multiset word, in lexicographic order.
pub fn multiset_permutations<T: Ord + Clone>(word: &[T]) -> Vec<Vec<T>> {
    let mut cur: Vec<T> = word.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[i - 1] < cur[j]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
