//! Convex polytopes in two and three dimensions.

mod distance;
pub(crate) mod halfspace;
pub(crate) mod hull;
pub mod io;
mod lp;
mod mean_width;
mod overlap;
pub mod measure;
pub mod polytope;
pub mod random;

pub use measure::{Atom, DirectionalMeasure, ALEXANDROV_TOL, MERGE_ANGLE};
pub use polytope::{convex_hull, halfspace_intersection, Facet, Polytope, GEOM_TOL};
pub use random::{random_direction, random_polytope, random_polytope_with, random_rotation, sample_rng, seeded_rng, SweepRng};
