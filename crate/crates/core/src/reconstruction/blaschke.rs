use super::solver::{solve_minkowski, SolverConfig};
use crate::bodies::Box;
use crate::error::{Error, Result};
use crate::geometry::Polytope;

/// The body whose surface area measure is `µ(K) + µ(L)`.
pub fn blaschke_sum(k: &Polytope, l: &Polytope, cfg: &SolverConfig) -> Result<Polytope> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: l.dim(),
        });
    }
    let m = k.surface_area_measure().add(&l.surface_area_measure())?;
    solve_minkowski(&m, cfg)
}

/// `t·K = t^{1/(n-1)} K`, centered at its centroid.
pub fn blaschke_scale(t: f64, k: &Polytope) -> Result<Polytope> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {t}")));
    }
    Ok(k.dilate(t.powf(1.0 / (k.dim() as f64 - 1.0))).centered())
}

/// Closed-form Blaschke sum of two axis boxes.
pub fn blaschke_sum_boxes(a: &Box, b: &Box) -> Result<Box> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let areas: Vec<f64> = a
        .face_areas()
        .iter()
        .zip(b.face_areas())
        .map(|(x, y)| x + y)
        .collect();
    Box::from_face_areas(&areas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_plus_cube() {
        let c = Box::cube(3, 1.0).unwrap();
        let s = blaschke_sum_boxes(&c, &c).unwrap();
        for x in &s.sides {
            assert!((x - 2f64.sqrt()).abs() < 1e-15);
        }
        let p = blaschke_sum(&c.to_polytope(), &c.to_polytope(), &SolverConfig::default()).unwrap();
        assert!(p.hausdorff_distance(&s.to_polytope()) < 1e-8);
        let q = blaschke_scale(2.0, &c.to_polytope()).unwrap();
        assert!(q.hausdorff_distance(&s.to_polytope()) < 1e-14);
    }

    #[test]
    fn general_boxes() {
        let a = Box::new(vec![1.0, 2.0, 3.0]).unwrap();
        let b = Box::new(vec![0.5, 4.0, 1.0]).unwrap();
        let s = blaschke_sum_boxes(&a, &b).unwrap();
        let expect = [6.0 + 4.0, 3.0 + 0.5, 2.0 + 2.0];
        for (x, e) in s.face_areas().iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
        let p = blaschke_sum(&a.to_polytope(), &b.to_polytope(), &SolverConfig::default()).unwrap();
        assert!(p.hausdorff_distance(&s.to_polytope()) < 1e-8);
    }

    #[test]
    fn thin_box_stays_well_posed() {
        let a = Box::new(vec![1.0, 1e-6, 1.0]).unwrap();
        let b = Box::cube(3, 1.0).unwrap();
        let s = blaschke_sum_boxes(&a, &b).unwrap();
        assert!(s.sides.iter().all(|x| x.is_finite() && *x > 0.0));
    }
}
