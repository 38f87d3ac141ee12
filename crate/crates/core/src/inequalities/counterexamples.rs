//! Explicit failures of Kneser-Süss and Brunn-Minkowski type inequalities.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::engine::{bm_deficit, ks_deficit};
use super::report::DeficitReport;
use crate::bodies::{Body, Box, Rect, Spheroid};
use crate::error::{Error, Result};
use crate::functionals::{capacity_prolate_spheroid, surface_area_prolate_spheroid, Functional};
use crate::geometry::sample_rng;
use crate::reconstruction::SolverConfig;

fn boxed(sides: [f64; 3]) -> Result<Body> {
    Ok(Body::Box(Box::new(sides.to_vec())?))
}

fn ks_lambda1(p: [f64; 3], q: [f64; 3]) -> Result<DeficitReport> {
    // boxes take the closed-form Blaschke sum; the solver config is unused
    ks_deficit(Functional::Lambda1, &boxed(p)?, &boxed(q)?, &SolverConfig::default())
}

fn logspace(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = if count > 1 { (hi - lo) / (count - 1) as f64 } else { 0.0 };
    (0..count).map(move |i| 10f64.powf(lo + step * i as f64))
}

/// Kneser-Süss for `λ₁` on boxes, exponent `(n-1)/α = -1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rem3Report {
    /// Plates `(0.01,1,1)` and `(0.005,2,2)`.
    pub witness: DeficitReport,
    /// Most negative normalized deficit over boxes `(1,y₁,1)`, `(4,y₂,1)`.
    pub family_best: DeficitReport,
    /// The same family along `y₁ = 10^j`, `y₂ = 10^{-j}`, `j = 1..4`.
    pub corner: Vec<DeficitReport>,
    /// Whether every corner evaluation has a positive deficit.
    pub corner_positive: bool,
    pub grid: usize,
}

pub fn reproduce_rem3() -> Result<Rem3Report> {
    reproduce_rem3_with(61)
}

/// `grid` points per axis over `y₁ ∈ [1, 10⁶]`, `y₂ ∈ [10⁻⁶, 1]`.
pub fn reproduce_rem3_with(grid: usize) -> Result<Rem3Report> {
    let start = Instant::now();
    let witness = ks_lambda1([0.01, 1.0, 1.0], [0.005, 2.0, 2.0])?.with_wall_time(start.elapsed());
    if witness.deficit >= 0.0 {
        return Err(Error::NoViolationFound(format!(
            "plate pair deficit {:.3e}",
            witness.deficit
        )));
    }
    let mut family_best: Option<DeficitReport> = None;
    for y1 in logspace(0.0, 6.0, grid) {
        for y2 in logspace(-6.0, 0.0, grid) {
            let r = ks_lambda1([1.0, y1, 1.0], [4.0, y2, 1.0])?;
            if family_best
                .as_ref()
                .is_none_or(|b| r.normalized_deficit < b.normalized_deficit)
            {
                family_best = Some(r);
            }
        }
    }
    let corner = (1..=4)
        .map(|j| ks_lambda1([1.0, 10f64.powi(j), 1.0], [4.0, 10f64.powi(-j), 1.0]))
        .collect::<Result<Vec<_>>>()?;
    let corner_positive = corner.iter().all(|r| r.deficit > 0.0);
    Ok(Rem3Report {
        witness,
        family_best: family_best.ok_or_else(|| Error::InvalidArgument("empty grid".into()))?,
        corner,
        corner_positive,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rem1Row {
    pub k: i32,
    pub a: f64,
    pub b: f64,
    pub capacity: f64,
    pub surface_area: f64,
    /// `Cap² / S`.
    pub quotient: f64,
}

/// `Cap²/S` along prolate spheroids `a = 10^k`, `b = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rem1Report {
    pub rows: Vec<Rem1Row>,
    pub strictly_increasing: bool,
    /// Last quotient over the `k = 1` quotient.
    pub growth: f64,
}

pub fn reproduce_rem1() -> Result<Rem1Report> {
    let rows = (0..=6)
        .map(|k| {
            let sp = Spheroid::new(10f64.powi(k), 1.0)?;
            let capacity = capacity_prolate_spheroid(&sp);
            let surface_area = surface_area_prolate_spheroid(&sp);
            Ok(Rem1Row {
                k,
                a: sp.a,
                b: sp.b,
                capacity,
                surface_area,
                quotient: capacity * capacity / surface_area,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_increasing = rows.windows(2).all(|w| w[1].quotient > w[0].quotient);
    let growth = rows[6].quotient / rows[1].quotient;
    Ok(Rem1Report {
        rows,
        strictly_increasing,
        growth,
    })
}

/// Direct search for Brunn-Minkowski failures of `λ₂^{-1/2}` on rectangles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lambda2Search {
    pub best: DeficitReport,
    pub violation_found: bool,
    pub evaluated: usize,
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Pairs `[0,1]×[0,r₁]` and `s·([0,1]×[0,r₂])`: a `grid³` lattice in
/// `log r₁, log r₂, log s ∈ [-1.5, 1.5]`, then `samples` seeded random pairs.
pub fn lambda2_bm_search(grid: usize, samples: usize, seed: u64) -> Result<Lambda2Search> {
    let start = Instant::now();
    let eval = |r1: f64, r2: f64, s: f64| -> Result<DeficitReport> {
        let k = Body::Rect(Rect::new(1.0, r1)?);
        let l = Body::Rect(Rect::new(s, s * r2)?);
        bm_deficit(Functional::Lambda2, &k, &l)
    };
    let mut best: Option<DeficitReport> = None;
    let mut keep = |r: DeficitReport| {
        if best
            .as_ref()
            .is_none_or(|b| r.normalized_deficit < b.normalized_deficit)
        {
            best = Some(r);
        }
    };
    let axis: Vec<f64> = logspace(-1.5, 1.5, grid).collect();
    for &r1 in &axis {
        for &r2 in &axis {
            for &s in &axis {
                keep(eval(r1, r2, s)?);
            }
        }
    }
    for i in 0..samples {
        let mut rng = sample_rng(seed, i as u64);
        let mut draw = || 10f64.powf(rng.random_range(-1.5..1.5));
        let (r1, r2, s) = (draw(), draw(), draw());
        keep(eval(r1, r2, s)?);
    }
    let best = best
        .ok_or_else(|| Error::InvalidArgument("empty search".into()))?
        .with_wall_time(start.elapsed());
    Ok(Lambda2Search {
        violation_found: best.deficit < -1e-12 * best.rhs.abs(),
        best,
        evaluated: grid.pow(3) + samples,
        grid,
        samples,
        seed,
    })
}
