//! Exact rational scalars, vectors, matrices, linear solving and linear
//! programming.

pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod rational;
pub mod vector;

pub use linalg::{canonical_basis, nullspace, solve_linear};
pub use lp::{feasible_point, lp, LpOutcome, Polyhedron, Sense};
pub use matrix::MatrixQ;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use vector::VectorQ;
