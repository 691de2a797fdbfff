//! Poincaré polynomials of generic torus orbit closures in Schubert varieties,
//! computed from the combinatorics of Bruhat interval polytopes.
//!
//! The crate is organised bottom-up:
//!
//! - [`permutation`]: the symmetric group, lengths and Bruhat order.
//! - [`bruhat_graph`]: the edge sets `E_w(u)`, ascent counts and the level
//!   function certifying ascending faces.
//! - [`lattice`]: exact integer linear algebra (rank, Smith normal form).
//! - [`polytope`]: brute-force exact convex hulls, face lattices and vertex
//!   classification.
//! - [`retraction`]: retraction sequences, either induced by a linear height
//!   function or found by exhaustive search.
//! - [`poincare`]: the polynomials `A_w(t)`, `A_{v,w}(t)`, Eulerian and Betti
//!   polynomials.
//! - [`cli`]: report builders backing the command-line tool.

pub mod bruhat_graph;
pub mod cli;
mod error;
pub mod lattice;
pub mod permutation;
pub mod poincare;
pub mod polytope;
pub mod retraction;

pub use bruhat_graph::{AscentGraph, BruhatEdgeSet, ValuePair};
pub use error::{Error, Result};
pub use permutation::{BruhatInterval, Permutation};
pub use poincare::IntPolynomial;
pub use polytope::{LatticePoint, LatticePolytope, VertexClassification};
pub use retraction::{RetractionSequence, RetractionStep};
