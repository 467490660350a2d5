//! Cliquewidth laboratory: the term algebra of coloured graphs, trees as
//! laminar set families, tree decompositions with contextual classes, a small
//! MSO evaluator with q-theories, and per-instance structural analyzers
//! (supercolours, entanglement, orientations, consistent cuts,
//! linearisations). Everything is built for desk-scale instances and verified
//! against brute-force oracles.

pub mod analysis;
pub mod caps;
pub mod catalog;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod mso;
pub mod obstruction;
pub mod random;
pub mod semigroup;
pub mod term;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{ColouredGraph, Colour, FlipSpec, Vertex, VertexSubset};
pub use term::{GraphTerm, Shape, Template};
pub use tree::{NodeId, SetTree, Split};
