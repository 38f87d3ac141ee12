//! Newtonian capacity in `R³`, normalized as `Cap = ∫|∇u|²` so that
//! `Cap(B_R) = 4πR`, and surface areas of prolate spheroids.

use std::f64::consts::PI;

use crate::bodies::Spheroid;

pub fn capacity_ball(r: f64) -> f64 {
    4.0 * PI * r
}

pub fn surface_area_ball(r: f64) -> f64 {
    4.0 * PI * r * r
}

/// `4π √(a²-b²) / arccosh(a/b)`, written as `4πb s / asinh s` with
/// `s = √(δ(2+δ))`, `δ = (a-b)/b`, which is exact at and near the ball.
pub fn capacity_prolate_spheroid(sp: &Spheroid) -> f64 {
    let delta = (sp.a - sp.b) / sp.b;
    let s = (delta * (2.0 + delta)).sqrt();
    if s < 1e-4 {
        // s / asinh s = 1 + s²/6 - 17 s⁴/360 + ...
        let s2 = s * s;
        return 4.0 * PI * sp.b * (1.0 + s2 / 6.0 - 17.0 * s2 * s2 / 360.0);
    }
    4.0 * PI * sp.b * s / s.asinh()
}

/// `2πb² (1 + (a/b) arcsin(e)/e)`, `e = √(1 - b²/a²)`.
pub fn surface_area_prolate_spheroid(sp: &Spheroid) -> f64 {
    let (a, b) = (sp.a, sp.b);
    let e = ((a - b) * (a + b)).sqrt() / a;
    let ratio = if e < 1e-4 {
        let e2 = e * e;
        1.0 + e2 / 6.0 + 3.0 * e2 * e2 / 40.0
    } else {
        e.asin() / e
    };
    2.0 * PI * b * b * (1.0 + a / b * ratio)
}

pub fn volume_prolate_spheroid(sp: &Spheroid) -> f64 {
    4.0 / 3.0 * PI * sp.a * sp.b * sp.b
}
