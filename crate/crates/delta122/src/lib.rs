//! Structure theory of Δ(1,2,2)-free tournaments.
//!
//! Δ(1,2,2) is the 5-vertex tournament obtained from a cyclic triangle by
//! substituting a 2-vertex tournament for two of its vertices: a vertex `x`,
//! a pair `Y`, and a pair `Z` with `x ⇒ Y ⇒ Z ⇒ x`. A tournament is *free*
//! if no five vertices induce it.
//!
//! The crate provides:
//!
//! * [`core`] — tournaments (bitset adjacency), vertex orderings, backedge
//!   graphs, the `.tmt` text format, and small-instance isomorphism;
//! * [`patterns`] — the fixed patterns (Δ(1,2,2), the basic tournaments T5,
//!   P7⁻, P7, and the ordered graphs H5/H6/H7) plus the structural
//!   predicates: copy detection, homogeneous sets and pairs, nice vertices,
//!   bridges;
//! * [`construct`] — substitution, the P7⁻-join, decomposition-tree replay,
//!   and seeded random generation of free tournaments;
//! * [`decompose`] — the inverse direction: paving orderings by vertex
//!   insertion, the full structure decomposition, the natural ordering, and
//!   the monotone-path/H5/H6/H7 backedge normal form;
//! * [`apps`] — certified 3-colorings, the 2-colorability test, transitive
//!   sets of size ≥ 3n/7, and triangle packings of size ≥ 2m/7;
//! * [`oracle`] — independent brute-force reference implementations and
//!   exhaustive small-n enumeration used as ground truth by the test suite.

pub mod apps;
pub mod cli;
pub mod construct;
pub mod core;
pub mod decompose;
pub mod error;
pub mod oracle;
pub mod patterns;

pub use crate::core::{backedge_graph, OrderedGraph, Tournament, VertexOrdering};
pub use crate::error::{Error, Result};
