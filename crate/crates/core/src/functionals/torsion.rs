//! Saint-Venant torsion of the rectangle `[0,a] × [0,b]`: `-Δu = 1`, `u = 0`
//! on the boundary, `τ = ∫ u`.
//!
//! Expanding in `x`,
//! `u = x(a-x)/2 - Σ_{k odd} 4a²/(π³k³) sin(kπx/a) cosh(kπ(y-b/2)/a)/cosh(kπb/2a)`.
//! Integrating term by term gives `τ`; the normal derivative on each side is
//! a sine series whose square integrates in closed form.

use std::f64::consts::PI;

use crate::bodies::Rect;
use crate::quadrature::adaptive;
use crate::special::{odd_tail, ZETA5};

/// `τ(a,b)`, using the short side in the expansion so the correction series
/// converges like `e^{-kπ·long/short}`.
pub fn torsion_rect(r: &Rect) -> f64 {
    let (s, t) = if r.a <= r.b { (r.a, r.b) } else { (r.b, r.a) };
    let mut corr = 0.0;
    let mut k = 1;
    loop {
        let kf = k as f64;
        let term = 2.0 / (kf.powi(5) * ((kf * PI * t / s).exp() + 1.0));
        corr += term;
        if term < 1e-18 || k > 2001 {
            break;
        }
        k += 2;
    }
    s.powi(3) * t / 12.0 - 16.0 * s.powi(4) / PI.powi(5) * (31.0 / 32.0 * ZETA5 - corr)
}

/// Partial sum over the first `terms` odd modes of
/// `τ = Σ_{k odd} 8a³/(π⁴k⁴) [b - (2a/kπ) tanh(kπb/2a)]`.
pub fn torsion_rect_partial(r: &Rect, terms: usize) -> f64 {
    let (a, b) = (r.a, r.b);
    let body = a.powi(3) * b / 12.0;
    let corr: f64 = (0..terms)
        .map(|j| (2 * j + 1) as f64)
        .map(|k| 16.0 * a.powi(4) / (PI.powi(5) * k.powi(5)) * (k * PI * b / (2.0 * a)).tanh())
        .sum();
    body - corr
}

/// `∫ (∂_ν u)²` over one side of length `len` when the other side is
/// `width`: `(8 len³/π⁴) Σ_{k odd} tanh²(kπ·width/(2 len)) / k⁴`.
pub fn side_energy(len: f64, width: f64) -> f64 {
    let c = PI * width / (2.0 * len);
    let mut sum = 0.0;
    let mut k = 1usize;
    // beyond kc = 20 the tanh² factor is 1 to double precision
    while (k as f64) * c <= 20.0 {
        let kf = k as f64;
        sum += (kf * c).tanh().powi(2) / kf.powi(4);
        k += 2;
    }
    sum += odd_tail(4.0, k);
    8.0 * len.powi(3) / PI.powi(4) * sum
}

/// `(w_x, w_y)`: boundary energy on each side with normal `±e₁`, resp. `±e₂`.
pub fn torsion_side_energies(r: &Rect) -> (f64, f64) {
    (side_energy(r.b, r.a), side_energy(r.a, r.b))
}

pub fn boundary_energy_torsion_rect(r: &Rect) -> f64 {
    let (wx, wy) = torsion_side_energies(r);
    2.0 * (wx + wy)
}

/// Normal derivative at arclength `s` on a side of length `len`, from the
/// expansion across the side: `width/2 - (4 width/π²) Σ_{k odd} ρ_k(s)/k²`.
fn normal_derivative(s: f64, len: f64, width: f64) -> f64 {
    let mut sum = 0.0;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        let q = kf * PI / width;
        let rho = ((-q * (len - s)).exp() + (-q * s).exp()) / (1.0 + (-q * len).exp());
        let term = rho / (kf * kf);
        sum += term;
        if term < 1e-19 || k > 2_000_001 {
            break;
        }
        k += 2;
    }
    width / 2.0 - 4.0 * width / (PI * PI) * sum
}

/// `(w_x, w_y)` by adaptive Gauss-Legendre quadrature of the squared normal
/// derivative, to `abs_tol` on each side.
pub fn torsion_side_energies_quadrature(r: &Rect, abs_tol: f64) -> (f64, f64) {
    let side = |len: f64, width: f64| {
        let f = |s: f64| normal_derivative(s, len, width).powi(2);
        adaptive(&f, 0.0, len, abs_tol)
    };
    (side(r.b, r.a), side(r.a, r.b))
}

/// Value of the torsion function at `(x, y)`.
pub fn torsion_field(r: &Rect, x: f64, y: f64) -> f64 {
    let (a, b) = (r.a, r.b);
    let mut sum = 0.0;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        let q = kf * PI / a;
        let rho = ((-q * (b - y)).exp() + (-q * y).exp()) / (1.0 + (-q * b).exp());
        let term = (q * x).sin() * rho / kf.powi(3);
        sum += term;
        if rho / kf.powi(3) < 1e-19 || k > 200_001 {
            break;
        }
        k += 2;
    }
    x * (a - x) / 2.0 - 4.0 * a * a / PI.powi(3) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pohozaev_identity() {
        // 4τ = a w_x + b w_y, from ∫(x·ν)|∇u|² = (n+2)τ
        for (a, b) in [(1.0, 1.0), (0.3, 2.0), (5.0, 0.7), (1e-3, 1.0)] {
            let r = Rect::new(a, b).unwrap();
            let (wx, wy) = torsion_side_energies(&r);
            let tau = torsion_rect(&r);
            assert!((4.0 * tau - a * wx - b * wy).abs() < 1e-13 * tau.max(1e-300) * 10.0, "{a},{b}");
        }
    }

    #[test]
    fn square_value_and_symmetry() {
        let sq = Rect::new(1.0, 1.0).unwrap();
        assert!((torsion_rect(&sq) - 0.035_144_253_738_788_43).abs() < 1e-12);
        let r = Rect::new(0.4, 1.7).unwrap();
        let s = Rect::new(1.7, 0.4).unwrap();
        assert!((torsion_rect(&r) - torsion_rect(&s)).abs() < 1e-15);
        assert!((torsion_rect_partial(&r, 3000) - torsion_rect(&r)).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_series() {
        for (a, b) in [(1.0, 1.0), (0.1, 1.0), (2.0, 0.5)] {
            let r = Rect::new(a, b).unwrap();
            let (wx, wy) = torsion_side_energies(&r);
            let (qx, qy) = torsion_side_energies_quadrature(&r, 1e-13);
            assert!((wx - qx).abs() < 1e-12, "{a},{b}: {wx} vs {qx}");
            assert!((wy - qy).abs() < 1e-12, "{a},{b}: {wy} vs {qy}");
        }
    }

    #[test]
    fn field_solves_the_equation() {
        let r = Rect::new(0.8, 1.3).unwrap();
        let (x, y, h) = (0.31, 0.47, 1e-3);
        let lap = (torsion_field(&r, x + h, y) + torsion_field(&r, x - h, y)
            + torsion_field(&r, x, y + h)
            + torsion_field(&r, x, y - h)
            - 4.0 * torsion_field(&r, x, y))
            / (h * h);
        assert!((lap + 1.0).abs() < 1e-5, "{lap}");
        assert!(torsion_field(&r, 0.4, 0.0).abs() < 1e-14);
        assert!(torsion_field(&r, 0.4, 1.3).abs() < 1e-14);
    }
}
