//! The equilateral triangle `T` with vertices `(0,0)`, `(1,0)`, `(1/2, √3/2)`.
//!
//! `u_T = sin(4πy/√3) - sin(2π(x + y/√3)) + sin(2π(x - y/√3))` is a first
//! Dirichlet eigenfunction with `λ₁ = 16π²/3`. Every side sits at distance
//! `r = √3/6` from the incenter, so the Rellich identity
//! `∫(x·ν)(∂_ν u)² = 2λ ∫u²` gives the normalized energy `2λ/r` in closed form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quadrature::GaussLegendre;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleQuotient {
    pub lambda1: f64,
    /// `∫_T u_T²` of the unnormalized eigenfunction.
    pub l2_norm_sq: f64,
    /// `∫_{∂T} |∇u_T|²` of the unnormalized eigenfunction.
    pub boundary_energy_raw: f64,
    /// Same, after L² normalization.
    pub boundary_energy: f64,
    /// `λ₁^{3/2} / boundary_energy` by quadrature.
    pub quotient: f64,
    /// `π/3`, from the Rellich identity.
    pub quotient_closed_form: f64,
    /// `(4π/√3)(2/9) ≈ 1.61`, the value found in the literature.
    pub quotient_literature: f64,
}

pub fn lambda1_triangle() -> f64 {
    16.0 * PI * PI / 3.0
}

pub fn triangle_eigenfunction(x: f64, y: f64) -> f64 {
    (4.0 * PI * y / SQRT3).sin() - (2.0 * PI * (x + y / SQRT3)).sin()
        + (2.0 * PI * (x - y / SQRT3)).sin()
}

fn gradient(x: f64, y: f64) -> (f64, f64) {
    let p = 2.0 * PI * (x + y / SQRT3);
    let m = 2.0 * PI * (x - y / SQRT3);
    let gx = -2.0 * PI * p.cos() + 2.0 * PI * m.cos();
    let gy = 4.0 * PI / SQRT3 * (4.0 * PI * y / SQRT3).cos()
        - 2.0 * PI / SQRT3 * p.cos()
        - 2.0 * PI / SQRT3 * m.cos();
    (gx, gy)
}

/// Quadrature with `nodes` Gauss-Legendre points per direction and per side.
pub fn lambda1_triangle_equilateral_with(nodes: usize) -> TriangleQuotient {
    let gl = GaussLegendre::new(nodes);
    let h = SQRT3 / 2.0;
    let l2_norm_sq = gl.integrate(0.0, h, |y| {
        let (x0, x1) = (y / SQRT3, 1.0 - y / SQRT3);
        gl.integrate(x0, x1, |x| triangle_eigenfunction(x, y).powi(2))
    });
    let corners = [(0.0, 0.0), (1.0, 0.0), (0.5, h)];
    let mut boundary_energy_raw = 0.0;
    for k in 0..3 {
        let (p, q) = (corners[k], corners[(k + 1) % 3]);
        // unit-length sides
        boundary_energy_raw += gl.integrate(0.0, 1.0, |t| {
            let (gx, gy) = gradient(p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
            gx * gx + gy * gy
        });
    }
    let lambda1 = lambda1_triangle();
    let boundary_energy = boundary_energy_raw / l2_norm_sq;
    TriangleQuotient {
        lambda1,
        l2_norm_sq,
        boundary_energy_raw,
        boundary_energy,
        quotient: lambda1.powf(1.5) / boundary_energy,
        quotient_closed_form: PI / 3.0,
        quotient_literature: 4.0 * PI / SQRT3 * 2.0 / 9.0,
    }
}

pub fn lambda1_triangle_equilateral() -> TriangleQuotient {
    lambda1_triangle_equilateral_with(48)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let t = lambda1_triangle_equilateral();
        // ∫u_T² = (3/2)·|T|
        assert!((t.l2_norm_sq - 3.0 * SQRT3 / 8.0).abs() < 1e-13);
        assert!((t.boundary_energy - 2.0 * t.lambda1 * 6.0 / SQRT3).abs() < 1e-10);
        assert!((t.quotient - PI / 3.0).abs() < 1e-12);
        // unnormalized energy reproduces the (9/2)λ of the literature
        assert!((t.boundary_energy_raw - 4.5 * t.lambda1).abs() < 1e-10);
    }

    #[test]
    fn vanishes_on_boundary_and_is_an_eigenfunction() {
        for t in [0.1, 0.37, 0.8] {
            assert!(triangle_eigenfunction(t, 0.0).abs() < 1e-14);
            assert!(triangle_eigenfunction(t / 2.0, t * SQRT3 / 2.0).abs() < 1e-13);
            assert!(triangle_eigenfunction(1.0 - t / 2.0, t * SQRT3 / 2.0).abs() < 1e-13);
        }
        let (x, y, h) = (0.45, 0.3, 1e-3);
        let f = triangle_eigenfunction;
        let lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y)) / (h * h);
        assert!((lap + lambda1_triangle() * f(x, y)).abs() < 1e-3);
    }
}
