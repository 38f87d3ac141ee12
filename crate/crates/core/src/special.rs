//! A few special functions needed by the series in `functionals`.

/// `ζ(5)`.
pub const ZETA5: f64 = 1.036_927_755_143_37;

/// Hurwitz zeta `ζ(s, q) = Σ_{j≥0} (q + j)^{-s}` for `s > 1`, `q > 0`, by
/// Euler-Maclaurin after ten explicit terms.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q > 0.0);
    const N: usize = 10;
    // B_{2m} / (2m)!
    const B: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30_240.0,
        -1.0 / 1_209_600.0,
        1.0 / 47_900_160.0,
        -691.0 / 1_307_674_368_000.0,
    ];
    let mut sum: f64 = (0..N).map(|j| (q + j as f64).powf(-s)).sum();
    let x = q + N as f64;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s(s+1)...(s+2m-2) times x^{-s-2m+1}
    let mut fac = s;
    let mut pow = x.powf(-s - 1.0);
    for (m, b) in B.iter().enumerate() {
        sum += b * fac * pow;
        let k = 2.0 * m as f64;
        fac *= (s + k + 1.0) * (s + k + 2.0);
        pow /= x * x;
    }
    sum
}

/// `Σ_{k odd, k ≥ first} k^{-s}`.
pub fn odd_tail(s: f64, first: usize) -> f64 {
    let first = if first.is_multiple_of(2) { first + 1 } else { first };
    hurwitz_zeta(s, first as f64 / 2.0) / 2f64.powf(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_values() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((hurwitz_zeta(4.0, 1.0) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((hurwitz_zeta(5.0, 1.0) - ZETA5).abs() < 1e-15);
    }

    #[test]
    fn odd_sums() {
        assert!((odd_tail(4.0, 1) - PI.powi(4) / 96.0).abs() < 1e-15);
        assert!((odd_tail(2.0, 1) - PI * PI / 8.0).abs() < 1e-15);
        let direct: f64 = (0..200_000).map(|j| (2 * j + 7) as f64).map(|k| k.powi(-4)).sum();
        assert!((odd_tail(4.0, 7) - direct).abs() < 1e-15);
    }
}
