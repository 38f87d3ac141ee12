//! Fraenkel relative asymmetry
//! `A(K,L) = inf_x Vol(K Δ (x + λL)) / Vol K`, `λ = (Vol K/Vol L)^{1/n}`.
//!
//! Since `Vol K = Vol λL`, `A = 2 (1 - max_x Vol(K ∩ (x + λL)) / Vol K)`.
//! The overlap raised to `1/n` is concave in `x` on its support, so a
//! compass search from the best of a `3ⁿ` start grid finds the maximum.

use nalgebra::DVector;

use super::report::AsymmetryResult;
use crate::error::{Error, Result};
use crate::geometry::Polytope;

/// Compass search stops once the step is below this fraction of the scale.
pub const TRANSLATION_TOL: f64 = 1e-8;

/// Every vector of `{-1,0,1}ⁿ`, the zero vector first.
fn lattice(n: usize) -> Vec<DVector<f64>> {
    let total = 3usize.pow(n as u32);
    let mut out: Vec<DVector<f64>> = (0..total)
        .map(|mut code| {
            DVector::from_fn(n, |_, _| {
                let d = (code % 3) as f64 - 1.0;
                code /= 3;
                d
            })
        })
        .collect();
    out.sort_by_key(|v| v.iter().filter(|x| **x != 0.0).count());
    out
}

pub fn fraenkel_asymmetry(k: &Polytope, l: &Polytope) -> Result<AsymmetryResult> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: l.dim(),
        });
    }
    let n = k.dim();
    let (vk, vl) = (k.volume(), l.volume());
    let lambda = (vk / vl).powf(1.0 / n as f64);
    // λL with its centroid at the origin; the search variable is its centroid
    let lc = l.centered().dilate(lambda);
    let scale = k.scale().max(lc.scale());
    let mut evals = 0usize;
    let mut overlap = |x: &DVector<f64>| -> Result<f64> {
        evals += 1;
        k.overlap_volume(&lc, x)
    };

    let pts = lattice(n);
    let dirs: Vec<DVector<f64>> = pts[1..].iter().map(|d| d.normalize()).collect();
    let start_step = 0.1 * scale;
    let mut best_x = k.centroid().clone();
    let mut best = overlap(&best_x)?;
    for d in &pts[1..] {
        let x = k.centroid() + d * start_step;
        let v = overlap(&x)?;
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let mut step = start_step;
    while step > TRANSLATION_TOL * scale {
        let mut moved = false;
        let mut cand = (best, best_x.clone());
        for d in &dirs {
            let x = &best_x + d * step;
            let v = overlap(&x)?;
            if v > cand.0 {
                cand = (v, x);
                moved = true;
            }
        }
        if moved {
            (best, best_x) = cand;
        } else {
            step *= 0.5;
        }
    }
    let asymmetry = (2.0 * (1.0 - best / vk)).clamp(0.0, 2.0);
    let translation = &best_x - l.centroid() * lambda;
    Ok(AsymmetryResult {
        asymmetry,
        translation: translation.iter().copied().collect(),
        scale: lambda,
        sigma: (vk / vl).max(vl / vk),
        evaluations: evals,
    })
}
