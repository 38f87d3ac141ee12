//! Brunn-Minkowski and Kneser-Süss deficits for any functional with a closed
//! form on the bodies involved.

use std::time::Instant;

use super::report::DeficitReport;
use crate::bodies::{Body, Box, Rect};
use crate::error::{Error, Result};
use crate::functionals::Functional;
use crate::geometry::Polytope;
use crate::reconstruction::{blaschke_sum, blaschke_sum_boxes, SolverConfig};

fn same_dim(k: &Body, l: &Body) -> Result<()> {
    if k.dim() == l.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: l.dim(),
        })
    }
}

fn as_polytope(b: &Body) -> Option<Polytope> {
    match b {
        Body::Polytope(p) => Some(p.clone()),
        Body::Box(x) => Some(x.to_polytope()),
        _ => None,
    }
}

/// `K + L`. Boxes and rectangles add side by side; mixed polytope pairs go
/// through the vertex hull.
pub fn minkowski_sum_bodies(k: &Body, l: &Body) -> Result<Body> {
    same_dim(k, l)?;
    match (k, l) {
        (Body::Box(a), Body::Box(b)) => Ok(Body::Box(Box::new(
            a.sides.iter().zip(&b.sides).map(|(x, y)| x + y).collect(),
        )?)),
        (Body::Rect(a), Body::Rect(b)) => Ok(Body::Rect(Rect::new(a.a + b.a, a.b + b.b)?)),
        _ => match (as_polytope(k), as_polytope(l)) {
            (Some(p), Some(q)) => Ok(Body::Polytope(p.minkowski_sum(&q)?)),
            _ => Err(Error::DomainMismatch(format!(
                "minkowski sum of {} and {}",
                k.kind(),
                l.kind()
            ))),
        },
    }
}

/// `K ∔ L`. Boxes use the closed form; a rectangle pair is also a box pair,
/// and in the plane the Blaschke sum is the Minkowski sum.
pub fn blaschke_sum_bodies(k: &Body, l: &Body, cfg: &SolverConfig) -> Result<Body> {
    same_dim(k, l)?;
    match (k, l) {
        (Body::Box(a), Body::Box(b)) => Ok(Body::Box(blaschke_sum_boxes(a, b)?)),
        (Body::Rect(_), Body::Rect(_)) => minkowski_sum_bodies(k, l),
        _ => match (as_polytope(k), as_polytope(l)) {
            (Some(p), Some(q)) => Ok(Body::Polytope(blaschke_sum(&p, &q, cfg)?)),
            _ => Err(Error::DomainMismatch(format!(
                "blaschke sum of {} and {}",
                k.kind(),
                l.kind()
            ))),
        },
    }
}

fn deficit(
    inequality: &str,
    f: Functional,
    k: &Body,
    l: &Body,
    sum: Body,
    exponent: f64,
) -> Result<DeficitReport> {
    let lhs = f.value(&sum)?.powf(exponent);
    let rhs = f.value(k)?.powf(exponent) + f.value(l)?.powf(exponent);
    Ok(DeficitReport::new(inequality, f.name(), k, l, sum, exponent, lhs, rhs))
}

/// `F^{1/α}(K + L) - F^{1/α}(K) - F^{1/α}(L)`.
pub fn bm_deficit(f: Functional, k: &Body, l: &Body) -> Result<DeficitReport> {
    let start = Instant::now();
    let sum = minkowski_sum_bodies(k, l)?;
    let p = 1.0 / f.alpha(k.dim());
    Ok(deficit("bm", f, k, l, sum, p)?.with_wall_time(start.elapsed()))
}

/// `F^{(n-1)/α}(K ∔ L) - F^{(n-1)/α}(K) - F^{(n-1)/α}(L)`.
pub fn ks_deficit(f: Functional, k: &Body, l: &Body, cfg: &SolverConfig) -> Result<DeficitReport> {
    let start = Instant::now();
    let sum = blaschke_sum_bodies(k, l, cfg)?;
    let n = k.dim() as f64;
    let p = (n - 1.0) / f.alpha(k.dim());
    Ok(deficit("ks", f, k, l, sum, p)?.with_wall_time(start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(s: &[f64]) -> Body {
        Body::Box(Box::new(s.to_vec()).unwrap())
    }

    #[test]
    fn homothetic_boxes_are_equality_cases() {
        let k = boxed(&[1.0, 2.0, 3.0]);
        let l = boxed(&[2.0, 4.0, 6.0]);
        let r = bm_deficit(Functional::Volume, &k, &l).unwrap();
        assert!(r.deficit.abs() < 1e-12);
        let r = bm_deficit(Functional::Lambda1, &k, &l).unwrap();
        assert!(r.deficit.abs() < 1e-12);
        let r = ks_deficit(Functional::Volume, &k, &l, &SolverConfig::default()).unwrap();
        assert!(r.deficit.abs() < 1e-12);
    }

    #[test]
    fn plate_pair_violates_ks_for_lambda1() {
        let k = boxed(&[0.01, 1.0, 1.0]);
        let l = boxed(&[0.005, 2.0, 2.0]);
        let r = ks_deficit(Functional::Lambda1, &k, &l, &SolverConfig::default()).unwrap();
        assert_eq!(r.exponent, -1.0);
        assert!(r.deficit < 0.0);
        assert!((r.lhs / r.rhs - 0.640_083_513_727_7).abs() < 1e-10);
    }

    #[test]
    fn spheroids_have_no_sum() {
        let s: Body = "spheroid:2,1".parse().unwrap();
        assert!(matches!(bm_deficit(Functional::Capacity, &s, &s), Err(Error::DomainMismatch(_))));
    }
}
