//! Seeded sweeps of an inequality over random pairs of bodies.
//!
//! Sample `i` draws from stream `i` of the seeded generator, so a row depends
//! only on `(seed, i)` and the table is identical for any number of workers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{bm_deficit, ks_deficit};
use super::quantitative::quantitative_ks_report;
use super::report::DeficitReport;
use crate::bodies::{Body, Box, Rect};
use crate::error::{Error, Result};
use crate::functionals::Functional;
use crate::geometry::{random_polytope, sample_rng, SweepRng};
use crate::mu::MuStructure;
use crate::reconstruction::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    Bm,
    Ks,
    MuConcavity,
    QuantKs,
}

impl Inequality {
    pub const ALL: [Inequality; 4] = [
        Inequality::Bm,
        Inequality::Ks,
        Inequality::MuConcavity,
        Inequality::QuantKs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::Bm => "bm",
            Inequality::Ks => "ks",
            Inequality::MuConcavity => "mu-concavity",
            Inequality::QuantKs => "quant-ks",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Inequality::ALL
            .into_iter()
            .find(|i| i.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown inequality `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub inequality: Inequality,
    pub functional: Functional,
    pub samples: usize,
    pub seed: u64,
    /// Ambient dimension for polytopes and boxes; rectangles are planar.
    pub dim: usize,
    pub solver: SolverConfig,
    /// A row counts as a violation when `deficit < -tol · max(1, |rhs|)`.
    pub tol: f64,
}

impl SweepConfig {
    pub fn new(inequality: Inequality, functional: Functional, samples: usize, seed: u64) -> Self {
        Self {
            inequality,
            functional,
            samples,
            seed,
            dim: 3,
            solver: SolverConfig::default(),
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub seed: u64,
    pub bodies: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub deficit: f64,
    pub normalized_deficit: f64,
    pub implied_c: Option<f64>,
    /// Set when the pair could not be evaluated; the numeric fields are NaN.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub evaluated: usize,
    pub failures: usize,
    pub violations: usize,
    pub min_deficit: f64,
    pub min_normalized_deficit: f64,
    /// Report of the pair with the smallest normalized deficit.
    pub worst: Option<DeficitReport>,
    pub implied_c_min: Option<f64>,
    pub implied_c_max: Option<f64>,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn violated(&self) -> bool {
        self.violations > 0
    }
}

fn log_uniform(rng: &mut SweepRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

fn random_box(dim: usize, rng: &mut SweepRng) -> Result<Body> {
    Ok(Body::Box(Box::new(
        (0..dim).map(|_| log_uniform(rng, 0.2, 5.0)).collect(),
    )?))
}

fn random_rect(rng: &mut SweepRng) -> Result<Body> {
    Ok(Body::Rect(Rect::new(
        log_uniform(rng, 0.1, 10.0),
        log_uniform(rng, 0.1, 10.0),
    )?))
}

/// A pair of bodies from the natural family of `f`: polytopes for volume and
/// mean width, boxes for `λ₁`, rectangles for `λ₂` and torsion.
pub fn random_pair(f: Functional, dim: usize, rng: &mut SweepRng) -> Result<(Body, Body)> {
    match f {
        Functional::Volume | Functional::MeanWidth => Ok((
            Body::Polytope(random_polytope(dim, rng)?),
            Body::Polytope(random_polytope(dim, rng)?),
        )),
        Functional::Lambda1 => Ok((random_box(dim, rng)?, random_box(dim, rng)?)),
        Functional::Lambda2 | Functional::Torsion => Ok((random_rect(rng)?, random_rect(rng)?)),
        Functional::Capacity => Err(Error::DomainMismatch(
            "capacity sweeps: spheroids are not closed under the sums".into(),
        )),
    }
}

fn mu_structure(f: Functional) -> Result<MuStructure> {
    MuStructure::ALL
        .into_iter()
        .find(|m| m.functional() == f)
        .ok_or_else(|| Error::DomainMismatch(format!("no µ-structure for {}", f.name())))
}

/// Evaluates the configured inequality on one pair.
pub fn evaluate_pair(
    cfg: &SweepConfig,
    k: &Body,
    l: &Body,
) -> Result<(DeficitReport, Option<f64>)> {
    let start = Instant::now();
    let (report, c) = match cfg.inequality {
        Inequality::Bm => (bm_deficit(cfg.functional, k, l)?, None),
        Inequality::Ks => (ks_deficit(cfg.functional, k, l, &cfg.solver)?, None),
        Inequality::MuConcavity => (
            mu_structure(cfg.functional)?.concavity_deficit(k, l, &cfg.solver)?,
            None,
        ),
        Inequality::QuantKs => match (cfg.functional, k, l) {
            (Functional::Volume, Body::Polytope(p), Body::Polytope(q)) => {
                let r = quantitative_ks_report(p, q, &cfg.solver)?;
                (r.ks, r.implied_c)
            }
            _ => {
                return Err(Error::DomainMismatch(
                    "quant-ks is defined for volume on polytopes".into(),
                ))
            }
        },
    };
    Ok((report.with_wall_time(start.elapsed()), c))
}

fn sample(cfg: &SweepConfig, index: usize) -> (SweepRow, Option<DeficitReport>) {
    let mut rng = sample_rng(cfg.seed, index as u64);
    let result = random_pair(cfg.functional, cfg.dim, &mut rng)
        .and_then(|(k, l)| evaluate_pair(cfg, &k, &l));
    match result {
        Ok((r, implied_c)) => (
            SweepRow {
                index,
                seed: cfg.seed,
                bodies: r.bodies.clone(),
                lhs: r.lhs,
                rhs: r.rhs,
                deficit: r.deficit,
                normalized_deficit: r.normalized_deficit,
                implied_c,
                error: None,
            },
            Some(r),
        ),
        Err(e) => (
            SweepRow {
                index,
                seed: cfg.seed,
                bodies: Vec::new(),
                lhs: f64::NAN,
                rhs: f64::NAN,
                deficit: f64::NAN,
                normalized_deficit: f64::NAN,
                implied_c: None,
                error: Some(e.to_string()),
            },
            None,
        ),
    }
}

/// Runs the sweep on the current rayon pool.
///
/// Domain errors that hit every sample (a functional outside the family of
/// the inequality) are returned as errors; isolated failures are counted.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    // surface configuration errors once instead of once per row
    let mut probe = sample_rng(cfg.seed, 0);
    let (k, l) = random_pair(cfg.functional, cfg.dim, &mut probe)?;
    if let Err(e @ (Error::DomainMismatch(_) | Error::UnsupportedDimension(_))) = evaluate_pair(cfg, &k, &l) {
        return Err(e);
    }
    let results: Vec<(SweepRow, Option<DeficitReport>)> =
        (0..cfg.samples).into_par_iter().map(|i| sample(cfg, i)).collect();
    let mut worst: Option<DeficitReport> = None;
    let mut violations = 0;
    let mut failures = 0;
    let mut min_deficit = f64::INFINITY;
    let mut cs = Vec::new();
    let mut rows = Vec::with_capacity(results.len());
    for (row, report) in results {
        match report {
            Some(r) => {
                if r.deficit < -cfg.tol * r.rhs.abs().max(1.0) {
                    violations += 1;
                }
                min_deficit = min_deficit.min(r.deficit);
                cs.extend(row.implied_c);
                if worst
                    .as_ref()
                    .is_none_or(|w| r.normalized_deficit < w.normalized_deficit)
                {
                    worst = Some(r);
                }
            }
            None => failures += 1,
        }
        rows.push(row);
    }
    Ok(SweepSummary {
        config: cfg.clone(),
        evaluated: cfg.samples - failures,
        failures,
        violations,
        min_deficit,
        min_normalized_deficit: worst.as_ref().map_or(f64::NAN, |w| w.normalized_deficit),
        worst,
        implied_c_min: cs.iter().copied().reduce(f64::min),
        implied_c_max: cs.iter().copied().reduce(f64::max),
        rows,
    })
}
