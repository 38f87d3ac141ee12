//! Volume of `K ∩ (t + L)` without assembling the intersection.

use nalgebra::DVector;

use super::halfspace::kernel;
use super::lp::chebyshev_center;
use super::measure::MERGE_ANGLE;
use super::polytope::{halfspace_intersection, Polytope};
use crate::error::{Error, Result};

impl Polytope {
    /// `Vol(self ∩ other)`; zero when the interiors are disjoint.
    pub fn intersection_volume(&self, other: &Polytope) -> Result<f64> {
        self.overlap_volume(other, &DVector::zeros(other.dim()))
    }

    /// `Vol(self ∩ (shift + other))`.
    pub fn overlap_volume(&self, other: &Polytope, shift: &DVector<f64>) -> Result<f64> {
        if self.dim() != other.dim() || shift.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: if shift.len() != self.dim() { shift.len() } else { other.dim() },
            });
        }
        let mut us: Vec<DVector<f64>> = self.facets().iter().map(|f| f.normal.clone()).collect();
        let mut hs: Vec<f64> = self.facets().iter().map(|f| f.offset).collect();
        for f in other.facets() {
            let h = f.offset + f.normal.dot(shift);
            match us.iter().position(|w| (w - &f.normal).norm() < MERGE_ANGLE) {
                Some(k) => hs[k] = hs[k].min(h),
                None => {
                    us.push(f.normal.clone());
                    hs.push(h);
                }
            }
        }
        let scale = self.scale().max(other.scale());
        let slack = |c: &DVector<f64>| {
            us.iter()
                .zip(&hs)
                .map(|(u, h)| h - u.dot(c))
                .fold(f64::INFINITY, f64::min)
        };
        let b = other.centroid() + shift;
        let candidates = [self.centroid().clone(), (self.centroid() + &b) * 0.5, b];
        let (mut center, mut best) = candidates
            .into_iter()
            .map(|c| {
                let s = slack(&c);
                (c, s)
            })
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("three candidates");
        if best <= 1e-6 * scale {
            let rows: Vec<Vec<f64>> = us.iter().map(|u| u.iter().copied().collect()).collect();
            match chebyshev_center(&rows, &hs, 2.0 * scale) {
                Ok((c, r)) => {
                    center = DVector::from_vec(c);
                    best = r;
                }
                Err(Error::Empty) => return Ok(0.0),
                Err(e) => return Err(e),
            }
        }
        if best <= 1e-12 * scale {
            return Ok(0.0);
        }
        let shifted: Vec<f64> = us.iter().zip(&hs).map(|(u, h)| h - u.dot(&center)).collect();
        match kernel(&us, &shifted) {
            Ok(k) => Ok(k.volume),
            // thin slivers: the assembled route is slower but filters degeneracies
            Err(_) => match halfspace_intersection(&us, &hs) {
                Ok(p) => Ok(p.volume()),
                Err(Error::Empty) => Ok(0.0),
                Err(e) => Err(e),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::Box;
    use crate::geometry::{random_polytope, seeded_rng};

    #[test]
    fn shifted_cubes() {
        let c = Box::cube(3, 1.0).unwrap().to_polytope();
        let t = DVector::from_vec(vec![0.5, 0.0, 0.0]);
        assert!((c.overlap_volume(&c, &t).unwrap() - 0.5).abs() < 1e-12);
        let t = DVector::from_vec(vec![0.25, -0.5, 0.75]);
        let expect = 0.75 * 0.5 * 0.25;
        assert!((c.overlap_volume(&c, &t).unwrap() - expect).abs() < 1e-12);
        let far = DVector::from_vec(vec![1.5, 0.0, 0.0]);
        assert_eq!(c.overlap_volume(&c, &far).unwrap(), 0.0);
    }

    #[test]
    fn agrees_with_assembled_intersection() {
        let mut rng = seeded_rng(3);
        for _ in 0..10 {
            let p = random_polytope(3, &mut rng).unwrap();
            let q = random_polytope(3, &mut rng).unwrap();
            let t = DVector::from_vec(vec![0.3, -0.2, 0.1]);
            let fast = p.overlap_volume(&q, &t).unwrap();
            let slow = p.intersect(&q.translate(&t)).unwrap().volume();
            assert!((fast - slow).abs() < 1e-10 * slow, "{fast} vs {slow}");
        }
    }
}
