//! Blaschke decomposition of measures with more than `n + 1` atoms.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::DirectionalMeasure;

/// Every coefficient of the split stays in `[MARGIN, 1 - MARGIN]`.
pub const MARGIN: f64 = 0.1;

/// True iff the support has exactly `n + 1` atoms.
pub fn is_indecomposable(m: &DirectionalMeasure) -> Result<bool> {
    m.ensure_alexandrov()?;
    Ok(m.len() == m.dim() + 1)
}

/// Splits `m` as `m' + m''` with both parts Alexandrov and `m'` not a
/// multiple of `m`.
///
/// The `n + 2` heaviest atoms get coefficients `γ = 1/2 + t k`, where `k`
/// spans the kernel of `k ↦ (Σ k_i f_i ξ_i, Σ k_i)`; that keeps the
/// barycenter of `γ·m` at zero and rules out `k ∝ 1`. The remaining atoms are
/// halved. `m''` gets `1 - γ`.
pub fn decompose(m: &DirectionalMeasure) -> Result<(DirectionalMeasure, DirectionalMeasure)> {
    if is_indecomposable(m)? {
        return Err(Error::Indecomposable);
    }
    let n = m.dim();
    let atoms = m.atoms();
    let mut order: Vec<usize> = (0..atoms.len()).collect();
    order.sort_by(|&i, &j| atoms[j].weight.total_cmp(&atoms[i].weight));
    let chosen = &order[..n + 2];

    let scale = atoms[chosen[0]].weight;
    let b = DMatrix::from_fn(n + 1, n + 2, |r, c| {
        let a = &atoms[chosen[c]];
        if r < n {
            a.weight / scale * a.dir[r]
        } else {
            1.0
        }
    });
    let eig = (b.transpose() * &b).symmetric_eigen();
    let (col, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty spectrum");
    let k = eig.eigenvectors.column(col);
    let kmax = k.amax();
    let t = (0.5 - MARGIN) / kmax;

    let mut gamma = vec![0.5; atoms.len()];
    for (c, &i) in chosen.iter().enumerate() {
        gamma[i] = 0.5 + t * k[c];
    }
    let w1: Vec<f64> = atoms.iter().zip(&gamma).map(|(a, g)| a.weight * g).collect();
    let w2: Vec<f64> = atoms
        .iter()
        .zip(&w1)
        .map(|(a, w)| a.weight - w)
        .collect();
    Ok((m.with_weights(&w1)?, m.with_weights(&w2)?))
}
