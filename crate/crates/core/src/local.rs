//! Second variation of surface area on the unit sphere.
//!
//! A normal perturbation `φ` of `S²` changes the area to second order by
//! `∫ |∇_τ φ|² - 2 G φ²` with `G ≡ 1`. On a degree-`l` harmonic this is
//! `(l(l+1) - 2)‖φ‖²`: negative for inflation, zero for translations and
//! positive beyond.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Finite-difference step of the default tangential gradient.
pub const FD_STEP: f64 = 1e-5;

/// Refinement tolerance of [`second_variation_surface`].
pub const REFINE_TOL: f64 = 1e-6;

/// A function on `S²`.
pub trait SphericalField: Sync {
    fn value(&self, x: &Vector3<f64>) -> f64;

    /// Gradient along the sphere at the unit vector `x`.
    fn tangential_gradient(&self, x: &Vector3<f64>) -> Vector3<f64> {
        fd_tangential_gradient(self, x)
    }
}

/// Central differences of the 0-homogeneous extension `φ(x/|x|)`, whose
/// ambient gradient on the sphere is tangential.
pub fn fd_tangential_gradient<F: SphericalField + ?Sized>(f: &F, x: &Vector3<f64>) -> Vector3<f64> {
    let mut g = Vector3::zeros();
    for i in 0..3 {
        let mut e = Vector3::zeros();
        e[i] = FD_STEP;
        let p = (x + e).normalize();
        let m = (x - e).normalize();
        g[i] = (f.value(&p) - f.value(&m)) / (2.0 * FD_STEP);
    }
    g
}

/// Real orthonormal spherical harmonic: `m > 0` takes `cos(mϕ)`, `m < 0`
/// takes `sin(|m|ϕ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Harmonic {
    pub l: usize,
    pub m: i64,
}

pub fn harmonic(l: usize, m: i64) -> Result<Harmonic> {
    if m.unsigned_abs() as usize > l {
        return Err(Error::InvalidArgument(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(Harmonic { l, m })
}

/// `(P_l^m(x), P_{l-1}^m(x))`, no Condon-Shortley phase, `P_{m-1}^m = 0`.
fn legendre(l: usize, m: usize, x: f64) -> (f64, f64) {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 0..m {
        pmm *= (2 * k + 1) as f64 * s;
    }
    if l == m {
        return (pmm, 0.0);
    }
    let (mut prev, mut cur) = (pmm, x * (2 * m + 1) as f64 * pmm);
    for n in m + 2..=l {
        let next = ((2 * n - 1) as f64 * x * cur - (n + m - 1) as f64 * prev) / (n - m) as f64;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

impl Harmonic {
    fn norm(&self) -> f64 {
        let m = self.m.unsigned_abs() as usize;
        // (l-m)!/(l+m)!
        let ratio: f64 = (self.l - m + 1..=self.l + m).map(|k| 1.0 / k as f64).product();
        let n = ((2 * self.l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
        if m == 0 {
            n
        } else {
            n * 2f64.sqrt()
        }
    }

    fn angular(&self, phi: f64) -> (f64, f64) {
        let m = self.m.unsigned_abs() as f64;
        match self.m {
            0 => (1.0, 0.0),
            k if k > 0 => ((m * phi).cos(), -m * (m * phi).sin()),
            _ => ((m * phi).sin(), m * (m * phi).cos()),
        }
    }
}

impl SphericalField for Harmonic {
    fn value(&self, x: &Vector3<f64>) -> f64 {
        let (p, _) = legendre(self.l, self.m.unsigned_abs() as usize, x.z.clamp(-1.0, 1.0));
        self.norm() * p * self.angular(x.y.atan2(x.x)).0
    }

    /// `∂_θ Y e_θ + (1/sin θ) ∂_ϕ Y e_ϕ`, with
    /// `sin θ ∂_θ P_l^m = l cos θ P_l^m - (l+m) P_{l-1}^m`.
    fn tangential_gradient(&self, x: &Vector3<f64>) -> Vector3<f64> {
        let z = x.z.clamp(-1.0, 1.0);
        let st = (1.0 - z * z).sqrt();
        if st < 1e-8 {
            return fd_tangential_gradient(self, x);
        }
        let m = self.m.unsigned_abs() as usize;
        let (p, p1) = legendre(self.l, m, z);
        let dp = (self.l as f64 * z * p - (self.l + m) as f64 * p1) / st;
        let phi = x.y.atan2(x.x);
        let (a, da) = self.angular(phi);
        let n = self.norm();
        let (cp, sp) = (phi.cos(), phi.sin());
        let e_theta = Vector3::new(z * cp, z * sp, -st);
        let e_phi = Vector3::new(-sp, cp, 0.0);
        e_theta * (n * dp * a) + e_phi * (n * p * da / st)
    }
}

/// `φ ∘ Rᵀ`, the field rotated by `R`.
pub struct Rotated<F> {
    pub field: F,
    pub rotation: Matrix3<f64>,
}

impl<F: SphericalField> SphericalField for Rotated<F> {
    fn value(&self, x: &Vector3<f64>) -> f64 {
        self.field.value(&(self.rotation.transpose() * x))
    }

    fn tangential_gradient(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * self.field.tangential_gradient(&(self.rotation.transpose() * x))
    }
}

/// Gauss-Legendre in `cos θ` times the uniform rule in `ϕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self {
            n_theta: 128,
            n_phi: 256,
        }
    }
}

impl SphereGrid {
    pub fn refined(&self) -> Self {
        Self {
            n_theta: self.n_theta * 3 / 2,
            n_phi: self.n_phi * 3 / 2,
        }
    }

    /// `∫_{S²} f` for a function of the point.
    pub fn integrate<G: Fn(&Vector3<f64>) -> f64 + Sync>(&self, f: G) -> f64 {
        let nodes = GaussLegendre::new(self.n_theta).mapped(-1.0, 1.0);
        let dphi = 2.0 * PI / self.n_phi as f64;
        nodes
            .par_iter()
            .map(|&(z, w)| {
                let r = (1.0 - z * z).sqrt();
                let ring: f64 = (0..self.n_phi)
                    .map(|j| {
                        let phi = (j as f64 + 0.5) * dphi;
                        f(&Vector3::new(r * phi.cos(), r * phi.sin(), z))
                    })
                    .sum();
                w * ring * dphi
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondVariation {
    /// `(∫|∇_τφ|² - 2φ²) / ‖φ‖²`.
    pub value: f64,
    pub dirichlet: f64,
    pub norm_sq: f64,
    /// Change of `value` on the refined grid.
    pub refinement_change: f64,
}

fn second_variation_on<F: SphericalField + ?Sized>(phi: &F, grid: &SphereGrid) -> (f64, f64) {
    let dirichlet = grid.integrate(|x| phi.tangential_gradient(x).norm_squared());
    let norm_sq = grid.integrate(|x| phi.value(x).powi(2));
    (dirichlet, norm_sq)
}

/// Second variation of surface area at the unit sphere in direction `φ`,
/// normalized by `‖φ‖²`.
pub fn second_variation_surface<F: SphericalField + ?Sized>(
    phi: &F,
    grid: &SphereGrid,
) -> Result<SecondVariation> {
    let (dirichlet, norm_sq) = second_variation_on(phi, grid);
    if !(norm_sq > 0.0) {
        return Err(Error::InvalidArgument("field vanishes on the grid".into()));
    }
    let value = dirichlet / norm_sq - 2.0;
    let (d2, n2) = second_variation_on(phi, &grid.refined());
    let refinement_change = (d2 / n2 - 2.0 - value).abs();
    if refinement_change > REFINE_TOL {
        return Err(Error::GridTooCoarse(refinement_change));
    }
    Ok(SecondVariation {
        value,
        dirichlet,
        norm_sq,
        refinement_change,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub l: usize,
    /// `l(l+1) - 2`.
    pub closed_form: f64,
    /// Quadrature at `m = 0`.
    pub quadrature: f64,
    /// Largest deviation from the closed form over `-l ≤ m ≤ l`.
    pub max_deviation: f64,
}

pub fn coercivity_profile(lmax: usize) -> Result<Vec<ProfileRow>> {
    coercivity_profile_on(lmax, &SphereGrid::default())
}

pub fn coercivity_profile_on(lmax: usize, grid: &SphereGrid) -> Result<Vec<ProfileRow>> {
    (0..=lmax)
        .map(|l| {
            let closed_form = (l * (l + 1)) as f64 - 2.0;
            let mut quadrature = f64::NAN;
            let mut max_deviation: f64 = 0.0;
            for m in -(l as i64)..=l as i64 {
                let v = second_variation_surface(&harmonic(l, m)?, grid)?.value;
                if m == 0 {
                    quadrature = v;
                }
                max_deviation = max_deviation.max((v - closed_form).abs());
            }
            Ok(ProfileRow {
                l,
                closed_form,
                quadrature,
                max_deviation,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{random_rotation, seeded_rng};

    #[test]
    fn orthonormal() {
        let grid = SphereGrid {
            n_theta: 24,
            n_phi: 48,
        };
        let hs: Vec<Harmonic> = (0..=4)
            .flat_map(|l| (-(l as i64)..=l as i64).map(move |m| Harmonic { l, m }))
            .collect();
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i..] {
                let g = grid.integrate(|x| a.value(x) * b.value(x));
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-8, "{a:?} {b:?}: {g}");
            }
        }
    }

    #[test]
    fn analytic_gradient_matches_differences() {
        let mut rng = seeded_rng(2);
        for (l, m) in [(1, 0), (2, 1), (3, -2), (4, 4), (5, -3)] {
            let h = harmonic(l, m).unwrap();
            for _ in 0..20 {
                let d = crate::geometry::random_direction(3, &mut rng);
                let x = Vector3::new(d[0], d[1], d[2]);
                let g = h.tangential_gradient(&x);
                assert!((g - fd_tangential_gradient(&h, &x)).norm() < 1e-7);
                assert!(g.dot(&x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn low_degrees() {
        let grid = SphereGrid::default();
        let v0 = second_variation_surface(&harmonic(0, 0).unwrap(), &grid).unwrap();
        assert!((v0.value + 2.0).abs() < 1e-10);
        let v1 = second_variation_surface(&harmonic(1, -1).unwrap(), &grid).unwrap();
        assert!(v1.value.abs() < 1e-10);
        let v2 = second_variation_surface(&harmonic(2, 1).unwrap(), &grid).unwrap();
        assert!((v2.value - 4.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_invariant() {
        let mut rng = seeded_rng(9);
        let r = random_rotation(3, &mut rng);
        let rot = Matrix3::from_fn(|i, j| r[(i, j)]);
        let grid = SphereGrid::default();
        let h = harmonic(3, 2).unwrap();
        let a = second_variation_surface(&h, &grid).unwrap().value;
        let b = second_variation_surface(&Rotated { field: h, rotation: rot }, &grid)
            .unwrap()
            .value;
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn coarse_grid_is_reported() {
        let grid = SphereGrid { n_theta: 4, n_phi: 8 };
        let r = second_variation_surface(&harmonic(6, 3).unwrap(), &grid);
        assert!(matches!(r, Err(Error::GridTooCoarse(_))));
    }
}
