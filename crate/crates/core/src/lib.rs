//! Exact computation of matching-type invariants of simple hypergraphs and of
//! the graded Betti numbers, projective dimension and regularity of
//! `R/I(H)`, where `I(H)` is the squarefree edge ideal.
//!
//! Three independent Betti engines are provided:
//!
//! - [`hochster::betti_table`] sums reduced homology of independence
//!   complexes over vertex subsets;
//! - [`taylor::betti_via_taylor`] takes homology of the Taylor complex after
//!   tensoring with the residue field;
//! - [`splitting::betti_recursive`] applies the splitting-edge recursion on
//!   triangulated hypergraphs in which intersecting edges share `d - 1`
//!   vertices.
//!
//! [`check`] cross-examines all of them against the combinatorial bounds
//! computed in [`family`], [`invariants`] and [`lyubeznik`], and [`campaign`]
//! drives seeded random searches for counterexamples.

pub mod betti;
pub mod bouquet;
pub mod campaign;
pub mod check;
pub mod error;
pub mod family;
pub mod generate;
pub mod hochster;
pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod lyubeznik;
pub mod named;
pub mod splitting;
pub mod taylor;
pub mod vertex_set;

pub use betti::BettiTable;
pub use error::{Error, Result};
pub use family::{classify, EdgeFamily, FamilyClassification};
pub use hypergraph::{Edge, Hypergraph, UniformityProfile, VertexId};
pub use invariants::{compute_invariants, InvariantReport};
pub use linalg::FieldChoice;
pub use vertex_set::VertexSet;
