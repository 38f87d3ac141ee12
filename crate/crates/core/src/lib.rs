//! Concavity inequalities for convex bodies.
//!
//! Polytopes, discrete Minkowski problems, µ-additions on analytic families,
//! and the functionals and inequality checks built on them.

pub mod bodies;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod inequalities;
pub mod local;
pub mod mu;
pub mod quadrature;
pub mod reconstruction;
pub mod special;

pub use error::{Error, Result};
pub use geometry::{DirectionalMeasure, Polytope};
