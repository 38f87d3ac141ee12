use std::time::Duration;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::bodies::Body;

/// One evaluated inequality `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeficitReport {
    /// `bm`, `ks`, `mu-concavity`, ...
    pub inequality: String,
    pub functional: String,
    /// Descriptors of the summands.
    pub bodies: Vec<String>,
    pub exponent: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub deficit: f64,
    pub normalized_deficit: f64,
    /// The summands followed by their sum.
    pub witness: Vec<Body>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl DeficitReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        inequality: &str,
        functional: &str,
        k: &Body,
        l: &Body,
        sum: Body,
        exponent: f64,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let deficit = lhs - rhs;
        Self {
            inequality: inequality.into(),
            functional: functional.into(),
            bodies: vec![k.to_string(), l.to_string()],
            exponent,
            lhs,
            rhs,
            deficit,
            normalized_deficit: deficit / rhs.abs(),
            witness: vec![k.clone(), l.clone(), sum],
            wall_time: Duration::ZERO,
        }
    }

    pub fn with_wall_time(mut self, t: Duration) -> Self {
        self.wall_time = t;
        self
    }

    pub fn is_violated(&self, tol: f64) -> bool {
        self.deficit < -tol
    }
}

/// Fraenkel asymmetry of a pair with the optimal translation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryResult {
    /// `A(K,L) ∈ [0,2]`.
    pub asymmetry: f64,
    /// `x₀` with `K Δ (x₀ + λL)` minimal.
    pub translation: Vec<f64>,
    /// `λ = (Vol K / Vol L)^{1/n}`.
    pub scale: f64,
    /// `σ = max(Vol K/Vol L, Vol L/Vol K)`.
    pub sigma: f64,
    /// Overlap evaluations spent by the search.
    pub evaluations: usize,
}

impl AsymmetryResult {
    pub fn translation_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.translation)
    }
}
