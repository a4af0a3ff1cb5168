//! Inversion functions, greedy sorting and shellings for capacity trees.
//!
//! A capacity tree is a rooted planar tree whose vertices hold a fixed
//! number of labels. Its labellings are the facets of a simplicial complex
//! whose faces are labelled forests obtained by cutting edges. This crate
//! builds the inversion function for trees with distributable capacity,
//! simulates the greedy sorting it induces, constructs shelling orders of
//! the complex and its skeleta, and checks everything by exhaustive
//! computation, including integer homology of the complexes.

pub mod cli;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod inversion;
pub mod sorter;
pub mod tree;

pub use error::{Error, Result};
pub use inversion::{Engine, InversionReport, Knobs, Rule};
pub use tree::{CapacityTree, EdgeSet, Label, Labelling, NodeSpec, Vertex};
