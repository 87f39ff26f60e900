//! Exact computations in finite-dimensional partially ordered vector spaces
//! with polyhedral cones: disjointness, bands, ideals, atoms, order
//! projections and the facet-functional vector lattice cover.

pub mod atoms;
pub mod bands;
pub mod classify;
pub mod completion;
pub mod cone;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod par;
pub mod projection;
pub mod random;
pub mod selftest;
pub mod seqspace;
pub mod subspace;

pub use error::{Error, Result};
pub use exact::{Rational, VectorQ};
pub use par::Execution;
