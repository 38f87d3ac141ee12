//! Dirichlet eigenvalues of boxes and rectangles, and the boundary energies
//! of their L²-normalized first eigenfunctions.

use std::f64::consts::PI;

use crate::bodies::{Box, Rect};
use crate::quadrature::GaussLegendre;

/// `π² Σ 1/a_i²`.
pub fn lambda1_box(b: &Box) -> f64 {
    PI * PI * b.sides.iter().map(|a| 1.0 / (a * a)).sum::<f64>()
}

pub fn lambda1_rect(r: &Rect) -> f64 {
    PI * PI * (1.0 / (r.a * r.a) + 1.0 / (r.b * r.b))
}

/// Second eigenvalue: the smaller of the `(2,1)` and `(1,2)` modes.
pub fn lambda2_rect(r: &Rect) -> f64 {
    let (ia, ib) = (1.0 / (r.a * r.a), 1.0 / (r.b * r.b));
    PI * PI * (4.0 * ia + ib).min(ia + 4.0 * ib)
}

/// `∫ (∂_ν u)²` over one facet with normal `±e_i`: `2π²/a_i³`.
pub fn lambda1_box_face_energies(b: &Box) -> Vec<f64> {
    b.sides.iter().map(|a| 2.0 * PI * PI / a.powi(3)).collect()
}

pub fn boundary_energy_lambda1_box(b: &Box) -> f64 {
    2.0 * lambda1_box_face_energies(b).iter().sum::<f64>()
}

/// `4π² (1/a³ + 1/b³)`; on `R_l` this is `4π² (1/l³ + 1)`.
pub fn boundary_energy_lambda1_rect(r: &Rect) -> f64 {
    4.0 * PI * PI * (r.a.powi(-3) + r.b.powi(-3))
}

/// The same energy by Gauss-Legendre quadrature of `(∂_ν u)²` along the four
/// sides, with `u = (2/√(ab)) sin(πx/a) sin(πy/b)`.
pub fn boundary_energy_lambda1_rect_quadrature(r: &Rect, nodes: usize) -> f64 {
    let gl = GaussLegendre::new(nodes);
    let amp = 2.0 / (r.a * r.b).sqrt();
    // |∂_x u| on x = 0 and x = a agree, likewise for y
    let vertical = gl.integrate(0.0, r.b, |y| {
        let g = amp * PI / r.a * (PI * y / r.b).sin();
        g * g
    });
    let horizontal = gl.integrate(0.0, r.a, |x| {
        let g = amp * PI / r.b * (PI * x / r.a).sin();
        g * g
    });
    2.0 * (vertical + horizontal)
}

/// Boundary energy of `R_l` as printed in the literature, `4π (1/l³ + 1)`.
pub fn literature_boundary_energy_lambda1_rect(l: f64) -> f64 {
    4.0 * PI * (l.powi(-3) + 1.0)
}
