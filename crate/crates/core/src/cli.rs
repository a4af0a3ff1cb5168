//! Command-line front end. `run` renders everything into a string so the
//! binary stays a thin wrapper and tests can call it directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::complex::{self, DEFAULT_FACE_BOUND};
use crate::error::{Error, Result};
use crate::homology;
use crate::inversion::Engine;
use crate::sorter::{self, Strategy, WeakOrder, DEFAULT_LABELLING_BOUND};
use crate::tree::{CapacityTree, EdgeSet, Label, Labelling, Vertex};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "TREESHELL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "treeshell", version, about = "Inversion functions, greedy sorting and shellings for capacity trees")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Enumeration bound: labellings for order computations, faces for
    /// complexes. Defaults to 50000 and 200000 respectively.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Destination vertex of every label.
    Destinations { tree: PathBuf },
    /// Label and node inversion pairs of a labelling.
    Invert { tree: PathBuf, labelling: PathBuf },
    /// Base-labelling of the component and labels named in a partial
    /// labelling file.
    BaseLabel {
        tree: PathBuf,
        labels: PathBuf,
        /// Fail unless the file's own placement is the base-labelling.
        #[arg(long)]
        check: bool,
    },
    /// Greedy sorting trace.
    Sort {
        tree: PathBuf,
        labelling: PathBuf,
        /// first, random(<seed>) or largest-potential-drop.
        #[arg(long, default_value = "first")]
        strategy: String,
    },
    /// Acyclicity and unique sink of the weak order.
    Confluence {
        tree: PathBuf,
        /// Also check steps restricted to every connected vertex set.
        #[arg(long)]
        subtrees: bool,
    },
    /// The weak order in DOT format.
    WeakOrder { tree: PathBuf },
    /// Face counts per dimension.
    Complex {
        tree: PathBuf,
        #[arg(long)]
        skeleton: Option<usize>,
    },
    /// Shelling certificate of a skeleton, or of the full complex when no
    /// edge set is given.
    Shell {
        tree: PathBuf,
        #[command(flatten)]
        edges: EdgeSelector,
        #[arg(long)]
        verify: bool,
        /// Seed for the linear extensions of the weak orders.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reduced integral homology.
    Homology {
        tree: PathBuf,
        #[arg(long)]
        skeleton: Option<usize>,
    },
    /// The star tree whose complex is the chessboard complex M_{m,n}.
    Chessboard { m: u32, n: u32 },
    /// Checks the capacity hypothesis of the skeleton shelling on an edge set.
    ValidateEdges {
        tree: PathBuf,
        #[command(flatten)]
        edges: EdgeSelector,
    },
    /// Homological obstruction to greedy sorting on a chessboard complex.
    Obstruction { m: u32, n: u32 },
}

#[derive(Args, Debug, Clone, Default)]
#[group(multiple = false)]
pub struct EdgeSelector {
    /// Edges to the first child of every vertex.
    #[arg(long)]
    pub first_children: bool,
    /// Edges to the first floor((deg-1)/2) children, plus the root edge.
    #[arg(long)]
    pub half_degree: bool,
    /// Comma-separated child endpoints.
    #[arg(long)]
    pub edges: Option<String>,
}

impl EdgeSelector {
    fn resolve(&self, t: &CapacityTree) -> Result<Option<EdgeSet>> {
        if self.first_children {
            t.first_children_edges().map(Some)
        } else if self.half_degree {
            t.half_degree_edges().map(Some)
        } else {
            self.edges.as_deref().map(|s| EdgeSet::parse(s, t)).transpose()
        }
    }
}

/// Whether the command established what it was asked to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Violated,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Violated => 1,
        }
    }
}

/// Exit code for an error: 1 when a construction with a unique answer
/// failed on valid input, 2 for everything about the input itself.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Construction(_) => 1,
        _ => 2,
    }
}

/// Sizes the global worker pool from `TREESHELL_THREADS` if set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| Error::Input(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Input(e.to_string()))
}

fn read_tree(path: &Path) -> Result<CapacityTree> {
    CapacityTree::parse(&fs::read_to_string(path)?)
}

fn read_labelling(path: &Path, t: &CapacityTree) -> Result<Labelling> {
    Labelling::parse(&fs::read_to_string(path)?, t)
}

impl RunConfig {
    fn labelling_bound(&self) -> usize {
        self.bound.map_or(DEFAULT_LABELLING_BOUND, |b| b as usize)
    }

    fn face_bound(&self) -> usize {
        self.bound.map_or(DEFAULT_FACE_BOUND, |b| b as usize)
    }
}

pub fn run(cfg: &RunConfig) -> Result<(Outcome, String)> {
    let mut out = String::new();
    let machine = cfg.format == Format::Machine;
    let outcome = match &cfg.command {
        Command::Destinations { tree } => {
            let t = read_tree(tree)?;
            for (i, v) in t.destinations().into_iter().enumerate() {
                writeln!(out, "{} -> {}", i + 1, t.name(v)).unwrap();
            }
            Outcome::Success
        }
        Command::Invert { tree, labelling } => {
            let t = read_tree(tree)?;
            let s = read_labelling(labelling, &t)?;
            out.push_str(&Engine::new(&t).label_inversions(&s).render(&t));
            Outcome::Success
        }
        Command::BaseLabel { tree, labels, check } => {
            let t = read_tree(tree)?;
            let given = Labelling::parse_partial(&fs::read_to_string(labels)?, &t)?;
            let component: Vec<Vertex> = given.keys().copied().collect();
            let pool: Vec<Label> = given.values().flatten().copied().sorted().collect();
            let base = Engine::new(&t).base_labelling(&component, &pool)?;
            for &v in &component {
                writeln!(out, "assign {} = {{{}}}", t.name(v), base[v.0].iter().join(",")).unwrap();
            }
            let differs = component.iter().find(|&&v| given[&v].iter().sorted().ne(base[v.0].iter().sorted()));
            match differs {
                Some(&v) if *check => {
                    writeln!(out, "MISMATCH at {}: given {{{}}}", t.name(v), given[&v].iter().join(",")).unwrap();
                    Outcome::Violated
                }
                _ => Outcome::Success,
            }
        }
        Command::Sort { tree, labelling, strategy } => {
            let t = read_tree(tree)?;
            let s = read_labelling(labelling, &t)?;
            let strategy: Strategy = strategy.parse()?;
            let e = Engine::new(&t);
            let trace = e.greedy_sort(&s, strategy)?;
            out.push_str(&trace.render(&t));
            writeln!(out, "potential {} steps {}", e.potential(&s)?, trace.step_count()).unwrap();
            if trace.terminal.is_sorted(&t) {
                Outcome::Success
            } else {
                writeln!(out, "NOT SORTED: terminal {}", trace.terminal.compact(&t)).unwrap();
                Outcome::Violated
            }
        }
        Command::Confluence { tree, subtrees } => {
            let t = read_tree(tree)?;
            let r = sorter::check_confluence(&Engine::new(&t), cfg.labelling_bound(), *subtrees)?;
            writeln!(out, "labellings {} restrictions {}", r.labellings, r.restrictions).unwrap();
            match &r.failure {
                None => {
                    out.push_str("CONFLUENT\n");
                    Outcome::Success
                }
                Some(f) => {
                    writeln!(out, "NOT CONFLUENT: {}", f.render(&t)).unwrap();
                    Outcome::Violated
                }
            }
        }
        Command::WeakOrder { tree } => {
            let t = read_tree(tree)?;
            out.push_str(&WeakOrder::build(&Engine::new(&t), cfg.labelling_bound())?.to_dot(&t));
            Outcome::Success
        }
        Command::Complex { tree, skeleton } => {
            let t = read_tree(tree)?;
            let top = skeleton.map_or(t.edge_count(), |k| (k + 1).min(t.edge_count()));
            for size in 0..=top {
                let n: u128 = complex::cuts_of_size(&t, size).into_iter().map(|c| complex::faces_with_cut(&t, c)).sum();
                let dim = size as isize - 1;
                match machine {
                    true => writeln!(out, "{dim},{n}").unwrap(),
                    false => writeln!(out, "dim {dim}: {n} faces").unwrap(),
                }
            }
            Outcome::Success
        }
        Command::Shell { tree, edges, verify, seed } => {
            let t = read_tree(tree)?;
            let cert = match edges.resolve(&t)? {
                Some(e) => complex::shelling_order(&t, &e, *seed, cfg.face_bound())?,
                None => complex::shell_full_distributable(&t, *seed, cfg.face_bound())?,
            };
            writeln!(out, "edges {}", cert.edges.display(&t)).unwrap();
            out.push_str(&cert.render());
            match (*verify).then(|| complex::verify_shelling(&cert)).flatten() {
                Some(f) => {
                    writeln!(out, "NOT A SHELLING: {}", f.render(&t)).unwrap();
                    Outcome::Violated
                }
                None => {
                    if *verify {
                        writeln!(out, "VERIFIED ({} facets, {} spheres)", cert.len(), cert.spanning_count()).unwrap();
                    }
                    Outcome::Success
                }
            }
        }
        Command::Homology { tree, skeleton } => {
            let t = read_tree(tree)?;
            let h = homology::reduced_homology(&t, *skeleton, cfg.face_bound())?;
            out.push_str(&if machine { h.render_machine() } else { h.render() });
            Outcome::Success
        }
        Command::Chessboard { m, n } => {
            out.push_str(&complex::chessboard_tree(*m, *n)?.to_ctree());
            Outcome::Success
        }
        Command::ValidateEdges { tree, edges } => {
            let t = read_tree(tree)?;
            let e = edges
                .resolve(&t)?
                .ok_or_else(|| Error::Input("give --first-children, --half-degree or --edges".into()))?;
            writeln!(out, "edges {}", e.display(&t)).unwrap();
            match t.edge_set_violation(&e) {
                None => {
                    out.push_str("VALID\n");
                    Outcome::Success
                }
                Some(w) => {
                    writeln!(
                        out,
                        "INVALID: removing [{}] leaves component {{{}}} whose derived tree is not distributable",
                        w.removed.display(&t),
                        w.component.iter().map(|&v| t.name(v)).join(",")
                    )
                    .unwrap();
                    Outcome::Violated
                }
            }
        }
        Command::Obstruction { m, n } => {
            let r = homology::sorting_obstruction_report(*m, *n, cfg.face_bound())?;
            match machine {
                true => out.push_str(&r.homology.render_machine()),
                false => out.push_str(&r.render()),
            }
            Outcome::Success
        }
    };
    Ok((outcome, out))
}
