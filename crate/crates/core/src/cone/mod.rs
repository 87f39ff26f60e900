//! Polyhedral cones and the order they induce.

pub mod dd;
mod space;

pub use space::{build_space, leq, sup_in_x, upper_bound_polyhedron, ConeSpec, OrderedSpace, SpaceSpec};
