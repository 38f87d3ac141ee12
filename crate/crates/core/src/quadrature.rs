//! Gauss-Legendre rules and an adaptive integrator built on them.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (mid + half * x, w * half))
            .collect()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Adaptive Gauss-Legendre integration: a panel is accepted when the 10- and
/// 20-point rules agree to `abs_tol` scaled by the panel's share of the interval.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> f64 {
    let low = GaussLegendre::new(10);
    let high = GaussLegendre::new(20);
    adaptive_rec(f, a, b, abs_tol, &low, &high, 0)
}

fn adaptive_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    low: &GaussLegendre,
    high: &GaussLegendre,
    depth: usize,
) -> f64 {
    let coarse = low.integrate(a, b, f);
    let fine = high.integrate(a, b, f);
    if (fine - coarse).abs() <= tol || depth >= 40 {
        return fine;
    }
    let m = 0.5 * (a + b);
    adaptive_rec(f, a, m, 0.5 * tol, low, high, depth + 1)
        + adaptive_rec(f, m, b, 0.5 * tol, low, high, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is the highest exact degree for 8 nodes
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(14));
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
        let w: f64 = rule.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn large_rules_stay_accurate() {
        let rule = GaussLegendre::new(128);
        let v = rule.integrate(0.0, PI, |x| x.sin());
        assert!((v - 2.0).abs() < 1e-13);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn adaptive_handles_kinks() {
        let v = adaptive(&|x: f64| (x - 0.3).abs(), -1.0, 1.0, 1e-12);
        assert!((v - (0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7)).abs() < 1e-10);
    }
}
