//! Polytopes from surface area measures.

mod blaschke;
mod decompose;
mod solver;

pub use blaschke::{blaschke_scale, blaschke_sum, blaschke_sum_boxes};
pub use decompose::{decompose, is_indecomposable, MARGIN};
pub use solver::{solve_minkowski, solve_minkowski_with_diagnostics, SolverConfig, SolverDiagnostics};
