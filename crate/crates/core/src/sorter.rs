//! Local sorting steps, greedy sorting, the weak order on labellings and
//! the potential function that bounds every sorting run.

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use petgraph::algo::is_cyclic_directed;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inversion::Engine;
use crate::tree::{CapacityTree, Label, Labelling, Vertex};

/// Default cap on the number of labellings enumerated at once.
pub const DEFAULT_LABELLING_BOUND: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The first neighbouring inversion in depth-first edge order.
    First,
    /// A uniformly random neighbouring inversion from a seeded generator.
    Random(u64),
    /// The step lowering the potential the most, first one on ties.
    LargestPotentialDrop,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::First => write!(f, "first"),
            Strategy::Random(seed) => write!(f, "random({seed})"),
            Strategy::LargestPotentialDrop => write!(f, "largest-potential-drop"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        let s = s.trim();
        match s {
            "first" => return Ok(Strategy::First),
            "largest-potential-drop" => return Ok(Strategy::LargestPotentialDrop),
            _ => {}
        }
        let seed = s
            .strip_prefix("random(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("random:"));
        match seed.map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(Strategy::Random(seed)),
            _ => Err(Error::Input(format!(
                "unknown strategy `{s}` (expected first, random(<seed>) or largest-potential-drop)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortStep {
    pub pair: (Vertex, Vertex),
    pub after: Labelling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortTrace {
    pub start: Labelling,
    pub strategy: Strategy,
    pub steps: Vec<SortStep>,
    pub terminal: Labelling,
}

impl SortTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// `step <n>: swap (<vi>,<vj>) -> <labelling>` lines.
    pub fn render(&self, t: &CapacityTree) -> String {
        let mut out = format!("start: {}\nstrategy: {}\n", self.start.compact(t), self.strategy);
        for (n, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: swap ({},{}) -> {}\n",
                n + 1,
                t.name(s.pair.0),
                t.name(s.pair.1),
                s.after.compact(t)
            ));
        }
        out.push_str(&format!("terminal: {}\n", self.terminal.compact(t)));
        out
    }
}

impl Engine<'_> {
    /// Redistributes the labels of a neighbouring inversion pair.
    pub fn local_sort_step(&self, tau: &Labelling, a: Vertex, b: Vertex) -> Result<Labelling> {
        let t = self.tree();
        if t.edge_between(a, b).is_none() {
            return Err(Error::Precondition(format!(
                "`{}` and `{}` are not neighbours",
                t.name(a),
                t.name(b)
            )));
        }
        if !self.pair_inverted(a, tau.at(a), b, tau.at(b)) {
            return Err(Error::Precondition(format!(
                "({},{}) is not an inversion pair",
                t.name(a),
                t.name(b)
            )));
        }
        self.unique_redistribution(tau, a, b)
    }

    /// `f(σ)`: over node inversion pairs, the number of labels the pair's
    /// redistribution moves from the earlier vertex to the later one,
    /// weighted by their distance.
    pub fn potential(&self, sigma: &Labelling) -> Result<u64> {
        let t = self.tree();
        let mut f = 0u64;
        for (a, b) in self.node_inversions(sigma) {
            let after = self.unique_redistribution(sigma, a, b)?;
            let moved = sigma.at(a).iter().filter(|l| after.at(b).contains(l)).count();
            f += (moved * t.distance(a, b)) as u64;
        }
        Ok(f)
    }

    /// Applies local sorting steps chosen by `strategy` until no
    /// neighbouring inversion is left. More steps than `f(σ)` means the
    /// potential argument was broken and is reported as an error.
    pub fn greedy_sort(&self, sigma: &Labelling, strategy: Strategy) -> Result<SortTrace> {
        let bound = self.potential(sigma)?;
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur = sigma.clone();
        let mut steps = Vec::new();
        loop {
            let pairs = self.neighbor_inversions(&cur);
            if pairs.is_empty() {
                break;
            }
            if steps.len() as u64 >= bound {
                return Err(Error::Construction(format!(
                    "sorting from {} exceeded the potential bound {bound}",
                    sigma.compact(self.tree())
                )));
            }
            let (pair, next) = match strategy {
                Strategy::First => {
                    let p = pairs[0];
                    (p, self.unique_redistribution(&cur, p.0, p.1)?)
                }
                Strategy::Random(_) => {
                    let p = *pairs.choose(rng.as_mut().unwrap()).unwrap();
                    (p, self.unique_redistribution(&cur, p.0, p.1)?)
                }
                Strategy::LargestPotentialDrop => {
                    let mut best: Option<((Vertex, Vertex), Labelling, u64)> = None;
                    for p in pairs {
                        let next = self.unique_redistribution(&cur, p.0, p.1)?;
                        let f = self.potential(&next)?;
                        if best.as_ref().is_none_or(|b| f < b.2) {
                            best = Some((p, next, f));
                        }
                    }
                    let (p, next, _) = best.unwrap();
                    (p, next)
                }
            };
            steps.push(SortStep { pair, after: next.clone() });
            cur = next;
        }
        Ok(SortTrace {
            start: sigma.clone(),
            strategy,
            steps,
            terminal: cur,
        })
    }
}

/// The weak order as a digraph whose arcs are local sorting steps, so the
/// sorted labelling is the unique sink when the order is well founded.
#[derive(Clone, Debug)]
pub struct WeakOrder {
    pub nodes: Vec<Labelling>,
    index: HashMap<Labelling, usize>,
    pub graph: DiGraph<usize, (Vertex, Vertex)>,
}

impl WeakOrder {
    pub fn build(e: &Engine, bound: usize) -> Result<WeakOrder> {
        let t = e.tree();
        let count = Labelling::count(t);
        if count > bound as u128 {
            return Err(Error::BoundExceeded { what: format!("{count} labellings"), bound });
        }
        let nodes = Labelling::enumerate(t);
        Self::from_nodes(e, nodes, |_| true)
    }

    /// The weak order on `nodes`, using only steps across edges whose child
    /// endpoint passes `edge_ok`. `nodes` must be closed under those steps.
    pub fn from_nodes(e: &Engine, nodes: Vec<Labelling>, edge_ok: impl Fn(Vertex) -> bool + Sync) -> Result<WeakOrder> {
        let t = e.tree();
        let index: HashMap<Labelling, usize> = nodes.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let arcs: Vec<Vec<((Vertex, Vertex), Labelling)>> = nodes
            .par_iter()
            .map(|s| {
                t.edges()
                    .filter(|&c| edge_ok(c))
                    .map(|c| (t.parent(c).unwrap(), c))
                    .filter(|&(p, c)| e.pair_inverted(p, s.at(p), c, s.at(c)))
                    .map(|(p, c)| e.unique_redistribution(s, p, c).map(|n| ((p, c), n)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut graph = DiGraph::with_capacity(nodes.len(), 0);
        for i in 0..nodes.len() {
            graph.add_node(i);
        }
        for (i, out) in arcs.into_iter().enumerate() {
            for (pair, next) in out {
                let j = *index.get(&next).ok_or_else(|| {
                    Error::Construction(format!("step from {} leaves the node set", nodes[i].compact(t)))
                })?;
                graph.add_edge(NodeIndex::new(i), NodeIndex::new(j), pair);
            }
        }
        Ok(WeakOrder { nodes, index, graph })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn index_of(&self, l: &Labelling) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Covers `(upper, lower)`: `lower` is one sorting step below `upper`.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph.raw_edges().iter().map(|e| (e.source().index(), e.target().index()))
    }

    pub fn is_acyclic(&self) -> bool {
        !is_cyclic_directed(&self.graph)
    }

    /// Labellings with no neighbouring inversion.
    pub fn sinks(&self) -> Vec<usize> {
        self.graph
            .node_indices()
            .filter(|&n| self.graph.neighbors(n).next().is_none())
            .map(|n| n.index())
            .collect()
    }

    /// Labellings no step leads to.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.len()];
        for (_, lower) in self.covers() {
            has_in[lower] = true;
        }
        (0..self.len()).filter(|&i| !has_in[i]).collect()
    }

    /// A node on some directed cycle, if there is one.
    pub fn cycle_witness(&self) -> Option<usize> {
        petgraph::algo::kosaraju_scc(&self.graph)
            .into_iter()
            .find(|c| c.len() > 1)
            .map(|c| c[0].index())
    }

    /// Linear extension listing lower elements first. Ties go to the
    /// smallest serialized labelling, or to a seeded random pick.
    pub fn linear_extension(&self, t: &CapacityTree, seed: Option<u64>) -> Result<Vec<usize>> {
        let n = self.len();
        let keys: Vec<String> = self.nodes.iter().map(|l| l.compact(t)).collect();
        // Pending lower neighbours; a node is ready once all are placed.
        let mut pending: Vec<usize> = vec![0; n];
        let mut uppers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (upper, lower) in self.covers() {
            pending[upper] += 1;
            uppers[lower].push(upper);
        }
        let mut order = Vec::with_capacity(n);
        match seed {
            None => {
                let mut ready: BinaryHeap<Reverse<(&str, usize)>> =
                    (0..n).filter(|&i| pending[i] == 0).map(|i| Reverse((keys[i].as_str(), i))).collect();
                while let Some(Reverse((_, i))) = ready.pop() {
                    order.push(i);
                    for &u in &uppers[i] {
                        pending[u] -= 1;
                        if pending[u] == 0 {
                            ready.push(Reverse((keys[u].as_str(), u)));
                        }
                    }
                }
            }
            Some(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
                while !ready.is_empty() {
                    let i = ready.swap_remove(rng.random_range(0..ready.len()));
                    order.push(i);
                    for &u in &uppers[i] {
                        pending[u] -= 1;
                        if pending[u] == 0 {
                            ready.push(u);
                        }
                    }
                }
            }
        }
        if order.len() != n {
            return Err(Error::Construction("weak order has a cycle".into()));
        }
        Ok(order)
    }

    /// DOT rendering with one node per labelling and arcs along sorting steps.
    pub fn to_dot(&self, t: &CapacityTree) -> String {
        let mut out = String::from("digraph weak_order {\n  rankdir=BT;\n");
        for (i, l) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", l.compact(t)));
        }
        for e in self.graph.raw_edges() {
            let (a, b) = e.weight;
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{},{}\"];\n",
                e.source().index(),
                e.target().index(),
                t.name(a),
                t.name(b)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Why a confluence check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfluenceFailure {
    /// A labelling lying on a cycle of sorting steps.
    Cycle(Labelling),
    /// Distinct terminal labellings.
    Sinks(Vec<Labelling>),
    /// The failure seen when only steps inside `vertices` are allowed.
    Subtree { vertices: Vec<Vertex>, failure: Box<ConfluenceFailure> },
}

impl ConfluenceFailure {
    pub fn render(&self, t: &CapacityTree) -> String {
        match self {
            ConfluenceFailure::Cycle(l) => format!("cycle through {}", l.compact(t)),
            ConfluenceFailure::Sinks(ls) => {
                format!("{} terminal labellings: {}", ls.len(), ls.iter().map(|l| l.compact(t)).join(" | "))
            }
            ConfluenceFailure::Subtree { vertices, failure } => format!(
                "restricted to {{{}}}: {}",
                vertices.iter().map(|&v| t.name(v)).join(","),
                failure.render(t)
            ),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub labellings: usize,
    pub restrictions: usize,
    pub failure: Option<ConfluenceFailure>,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

fn order_failure(w: &WeakOrder, expected_sink: Option<&Labelling>) -> Option<ConfluenceFailure> {
    if let Some(i) = w.cycle_witness() {
        return Some(ConfluenceFailure::Cycle(w.nodes[i].clone()));
    }
    let sinks = w.sinks();
    let good = sinks.len() == 1 && expected_sink.is_none_or(|s| &w.nodes[sinks[0]] == s);
    (!good).then(|| ConfluenceFailure::Sinks(sinks.into_iter().map(|i| w.nodes[i].clone()).collect()))
}

/// Checks that sorting steps from every labelling end at the sorted
/// labelling: the weak order is acyclic with that single sink. With
/// `subtrees`, the same holds for steps restricted to every connected
/// vertex set holding every possible label set.
pub fn check_confluence(e: &Engine, bound: usize, subtrees: bool) -> Result<ConfluenceReport> {
    let t = e.tree();
    let w = WeakOrder::build(e, bound)?;
    let mut report = ConfluenceReport { labellings: w.len(), ..Default::default() };
    if let Some(f) = order_failure(&w, Some(&Labelling::sorted(t))) {
        report.failure = Some(f);
        return Ok(report);
    }
    if !subtrees {
        return Ok(report);
    }
    let total = t.total_capacity();
    for part in t.connected_subsets().into_iter().filter(|p| p.len() >= 2 && p.len() < t.len()) {
        let inside = |v: Vertex| part.contains(&v);
        let cap: usize = part.iter().map(|&v| t.cap(v) as usize).sum();
        let others: Vec<Vertex> = t.vertices().filter(|v| !inside(*v)).collect();
        for labels in (1..=total).combinations(cap) {
            let rest: Vec<Label> = (1..=total).filter(|l| !labels.contains(l)).collect();
            let nodes = placements(t, &part, &labels, &others, &rest)?;
            let edge_ok = |c: Vertex| inside(c) && inside(t.parent(c).unwrap());
            let sub = WeakOrder::from_nodes(e, nodes, edge_ok)?;
            report.restrictions += 1;
            if let Some(f) = order_failure(&sub, None) {
                report.failure = Some(ConfluenceFailure::Subtree { vertices: part.clone(), failure: Box::new(f) });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Every way of placing `labels` on `part`, with `rest` fixed on `others`
/// in increasing order.
fn placements(
    t: &CapacityTree,
    part: &[Vertex],
    labels: &[Label],
    others: &[Vertex],
    rest: &[Label],
) -> Result<Vec<Labelling>> {
    let mut base = vec![Vec::new(); t.len()];
    let mut it = rest.iter();
    for &v in others {
        base[v.0] = it.by_ref().take(t.cap(v) as usize).copied().collect();
    }
    let word: Vec<Vertex> = part.iter().flat_map(|&v| std::iter::repeat_n(v, t.cap(v) as usize)).collect();
    crate::tree::multiset_permutations(&word)
        .into_iter()
        .map(|places| {
            let mut slots = base.clone();
            for (&l, v) in labels.iter().zip(places) {
                slots[v.0].push(l);
            }
            Labelling::new(t, slots)
        })
        .collect()
}
