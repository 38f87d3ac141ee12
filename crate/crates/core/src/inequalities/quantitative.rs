//! Kneser-Süss for volume with the Fraenkel asymmetry:
//! `Vol^{1-1/n}(K ∔ L) ≥ S (1 + A²/(c_n σ^{1-1/n}))`, `S` the right-hand sum.
//! The constant `c_n` is not known; each pair yields the smallest constant
//! it is consistent with, `S A² / (σ^{1-1/n} · deficit)`.

use serde::{Deserialize, Serialize};

use super::engine::ks_deficit;
use super::fraenkel::fraenkel_asymmetry;
use super::report::{AsymmetryResult, DeficitReport};
use crate::bodies::Body;
use crate::error::{Error, Result};
use crate::functionals::Functional;
use crate::geometry::Polytope;
use crate::reconstruction::SolverConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantitativeKsReport {
    pub ks: DeficitReport,
    pub asymmetry: AsymmetryResult,
    /// `σ^{1-1/n}`.
    pub sigma_pow: f64,
    /// `S A² / (σ^{1-1/n} · deficit)`, when the deficit is positive.
    pub implied_c: Option<f64>,
}

pub fn quantitative_ks_report(
    k: &Polytope,
    l: &Polytope,
    cfg: &SolverConfig,
) -> Result<QuantitativeKsReport> {
    let ks = ks_deficit(
        Functional::Volume,
        &Body::Polytope(k.clone()),
        &Body::Polytope(l.clone()),
        cfg,
    )?;
    let asym = fraenkel_asymmetry(k, l)?;
    let n = k.dim() as f64;
    let a = asym.asymmetry;
    if ks.deficit <= 1e-12 && a > 1e-6 {
        return Err(Error::DegenerateDeficit {
            deficit: ks.deficit,
            asymmetry: a,
        });
    }
    let sigma_pow = asym.sigma.powf(1.0 - 1.0 / n);
    let implied_c = (ks.deficit > 0.0 && a > 0.0).then(|| ks.rhs * a * a / (sigma_pow * ks.deficit));
    Ok(QuantitativeKsReport {
        ks,
        asymmetry: asym,
        sigma_pow,
        implied_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpliedConstants {
    pub pairs: usize,
    pub min: f64,
    pub max: f64,
}

/// Range of the implied constants over a batch; `max` is a lower bound for
/// any admissible `c_n`.
pub fn implied_constants(reports: &[QuantitativeKsReport]) -> Option<ImpliedConstants> {
    let cs: Vec<f64> = reports.iter().filter_map(|r| r.implied_c).collect();
    if cs.is_empty() {
        return None;
    }
    Some(ImpliedConstants {
        pairs: cs.len(),
        min: cs.iter().copied().fold(f64::INFINITY, f64::min),
        max: cs.iter().copied().fold(0.0, f64::max),
    })
}
