//! Analysis of the outer automorphism group of a right-angled Artin group
//! from its defining graph.
//!
//! The library computes the domination preorder and its equivalence classes,
//! detects separating intersections of links (SILs) and special SILs,
//! classifies a graph per the trichotomy driving the vastness properties of
//! the outer automorphism group, enumerates the standard generating sets, and
//! verifies the underlying algebraic identities at desk scale with an exact
//! word engine and exact integer representations.
//!
//! Start with [`graph::Graph::parse`] and [`classify::trichotomy`], or run
//! `cargo run --example classify_report` for an end-to-end tour.

pub mod autos;
pub mod classify;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod preorder;
pub mod rep;
pub mod report;
pub mod sil;
pub mod verify;
pub mod words;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{RaagError, Result};
pub use graph::{Graph, VertexId, VertexSet};
