//! Brunn-Minkowski, Kneser-Süss and µ-concavity checks, their quantitative
//! forms, and the known counterexamples.

mod counterexamples;
mod engine;
mod fraenkel;
mod quantitative;
mod report;
mod suites;
mod sweep;

pub use counterexamples::{
    lambda2_bm_search, reproduce_rem1, reproduce_rem3, reproduce_rem3_with, Lambda2Search,
    Rem1Report, Rem1Row, Rem3Report,
};
pub use engine::{blaschke_sum_bodies, bm_deficit, ks_deficit, minkowski_sum_bodies};
pub use fraenkel::{fraenkel_asymmetry, TRANSLATION_TOL};
pub use quantitative::{implied_constants, quantitative_ks_report, ImpliedConstants, QuantitativeKsReport};
pub use report::{AsymmetryResult, DeficitReport};
pub use suites::{
    lambda1_limit, quotient_suites, torsion_limit, triangle_refinement, volume_ball_check, FamilyRow,
    Lambda1Limit, QuotientSuites, TorsionLimit, TriangleRefinement, VolumeBallCheck,
};
pub use sweep::{evaluate_pair, random_pair, run_sweep, Inequality, SweepConfig, SweepRow, SweepSummary};
