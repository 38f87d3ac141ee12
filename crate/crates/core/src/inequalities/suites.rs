//! Sweeps of the isoperimetric-type quotient `E` over the analytic families,
//! with the ball comparison for volume on sampled polytopes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::counterexamples::{reproduce_rem1, Rem1Report};
use crate::bodies::{Body, Rect};
use crate::error::Result;
use crate::functionals::{
    boundary_energy_lambda1_rect_quadrature, isoperimetric_quotient, lambda1_rect,
    lambda1_triangle_equilateral, lambda1_triangle_equilateral_with, literature_boundary_energy_lambda1_rect,
    torsion_rect, volume_quotient_ball, Functional, TriangleQuotient,
};
use crate::geometry::{random_polytope, sample_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub l: f64,
    /// `F(R_l)`.
    pub value: f64,
    /// `E(R_l)`.
    pub quotient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionLimit {
    pub rows: Vec<FamilyRow>,
    /// Least-squares slope of `log E` against `log l`.
    pub slope: f64,
    /// `τ(R_l)/l³` at the smallest `l`, to be compared with `1/12`.
    pub tau_over_l3: f64,
}

/// `R_l` for `l ∈ [10⁻³, 10⁻¹]`, eight points per decade.
pub fn torsion_limit() -> Result<TorsionLimit> {
    let rows = (0..=16)
        .map(|i| {
            let l = 10f64.powf(-3.0 + i as f64 / 8.0);
            let r = Rect::canonical(l)?;
            let q = isoperimetric_quotient(Functional::Torsion, &Body::Rect(r))?;
            Ok(FamilyRow {
                l,
                value: torsion_rect(&r),
                quotient: q.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.l.ln(), r.quotient.ln())).collect();
    Ok(TorsionLimit {
        slope: ls_slope(&pts),
        tau_over_l3: rows[0].value / rows[0].l.powi(3),
        rows,
    })
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lambda1Limit {
    pub rows: Vec<FamilyRow>,
    /// `lim_{l→0} E(R_l) = π/4` for the energy of the normalized eigenfunction.
    pub limit_closed_form: f64,
    /// `E(R_l)` at `l = 10⁻⁴` with the boundary energy integrated numerically.
    pub limit_quadrature: f64,
    /// `π²/4`, the limit found in the literature.
    pub limit_literature: f64,
    /// Limit obtained with the literature's energy `4π(1/l³ + 1)`.
    pub limit_from_literature_energy: f64,
    pub triangle: TriangleQuotient,
}

pub fn lambda1_limit() -> Result<Lambda1Limit> {
    let rows = (0..=8)
        .map(|i| {
            let l = 10f64.powf(-i as f64 / 2.0);
            let r = Rect::canonical(l)?;
            let q = isoperimetric_quotient(Functional::Lambda1, &Body::Rect(r))?;
            Ok(FamilyRow {
                l,
                value: lambda1_rect(&r),
                quotient: q.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let l = 1e-4;
    let r = Rect::canonical(l)?;
    let lam = lambda1_rect(&r);
    // λ^{3/2} ~ π³/l³ cancels the leading 1/l³ of the energy
    let limit_quadrature = lam.powf(1.5) / boundary_energy_lambda1_rect_quadrature(&r, 32);
    let limit_from_literature_energy = lam.powf(1.5) / literature_boundary_energy_lambda1_rect(l);
    Ok(Lambda1Limit {
        rows,
        limit_closed_form: PI / 4.0,
        limit_quadrature,
        limit_literature: PI * PI / 4.0,
        limit_from_literature_energy,
        triangle: lambda1_triangle_equilateral(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleRefinement {
    pub coarse: f64,
    pub fine: f64,
    pub change: f64,
}

/// Triangle quotient at 48 and 64 nodes.
pub fn triangle_refinement() -> TriangleRefinement {
    let coarse = lambda1_triangle_equilateral_with(48).quotient;
    let fine = lambda1_triangle_equilateral_with(64).quotient;
    TriangleRefinement {
        coarse,
        fine,
        change: (fine - coarse).abs(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeBallCheck {
    pub samples: usize,
    pub seed: u64,
    pub ball: f64,
    pub max_quotient: f64,
    /// `max E(P) - E(B)`, nonpositive by isoperimetry.
    pub max_excess: f64,
}

pub fn volume_ball_check(samples: usize, seed: u64) -> Result<VolumeBallCheck> {
    let ball = volume_quotient_ball(3);
    let mut max_quotient = f64::NEG_INFINITY;
    for i in 0..samples {
        let p = random_polytope(3, &mut sample_rng(seed, i as u64))?;
        let q = isoperimetric_quotient(Functional::Volume, &Body::Polytope(p))?;
        max_quotient = max_quotient.max(q.value);
    }
    Ok(VolumeBallCheck {
        samples,
        seed,
        ball,
        max_quotient,
        max_excess: max_quotient - ball,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientSuites {
    pub torsion: TorsionLimit,
    pub lambda1: Lambda1Limit,
    pub triangle_refinement: TriangleRefinement,
    pub capacity: Rem1Report,
    pub volume: VolumeBallCheck,
}

pub fn quotient_suites() -> Result<QuotientSuites> {
    Ok(QuotientSuites {
        torsion: torsion_limit()?,
        lambda1: lambda1_limit()?,
        triangle_refinement: triangle_refinement(),
        capacity: reproduce_rem1()?,
        volume: volume_ball_check(50, 11)?,
    })
}
