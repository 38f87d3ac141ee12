use nalgebra::{DVector, Vector3};

use super::polytope::Polytope;

fn segment_distance(p: &DVector<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((p - a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + ab * t)).norm()
}

impl Polytope {
    /// Euclidean distance from `x` to the body; zero inside.
    pub fn distance_to(&self, x: &DVector<f64>) -> f64 {
        if self.facets().iter().all(|f| f.normal.dot(x) <= f.offset) {
            return 0.0;
        }
        let verts = self.vertices();
        self.facets()
            .iter()
            .map(|f| {
                let vs = &f.vertices;
                if self.dim() == 2 {
                    return segment_distance(x, &verts[vs[0]], &verts[vs[1]]);
                }
                // project onto the facet plane and test against each edge
                let gap = f.normal.dot(x) - f.offset;
                let proj = x - &f.normal * gap;
                let u = Vector3::new(f.normal[0], f.normal[1], f.normal[2]);
                let inside = (0..vs.len()).all(|k| {
                    let a = &verts[vs[k]];
                    let b = &verts[vs[(k + 1) % vs.len()]];
                    let e = Vector3::new(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
                    let d = Vector3::new(proj[0] - a[0], proj[1] - a[1], proj[2] - a[2]);
                    u.dot(&e.cross(&d)) >= 0.0
                });
                if inside {
                    gap.abs()
                } else {
                    (0..vs.len())
                        .map(|k| segment_distance(x, &verts[vs[k]], &verts[vs[(k + 1) % vs.len()]]))
                        .fold(f64::INFINITY, f64::min)
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Hausdorff distance; for convex bodies the maximum is attained at a
    /// vertex of one of them.
    pub fn hausdorff_distance(&self, other: &Polytope) -> f64 {
        let one = self
            .vertices()
            .iter()
            .map(|v| other.distance_to(v))
            .fold(0.0, f64::max);
        let two = other
            .vertices()
            .iter()
            .map(|v| self.distance_to(v))
            .fold(0.0, f64::max);
        one.max(two)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(v)
    }

    fn cube() -> Polytope {
        let pts: Vec<_> = (0..8)
            .map(|i| dv(&[(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]))
            .collect();
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn point_distances() {
        let c = cube();
        assert_eq!(c.distance_to(&dv(&[0.5, 0.5, 0.5])), 0.0);
        assert!((c.distance_to(&dv(&[0.5, 0.5, 3.0])) - 2.0).abs() < 1e-15);
        assert!((c.distance_to(&dv(&[2.0, 2.0, 0.5])) - 2f64.sqrt()).abs() < 1e-15);
        assert!((c.distance_to(&dv(&[2.0, 2.0, 2.0])) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn translate_distance() {
        let c = cube();
        assert_eq!(c.hausdorff_distance(&c), 0.0);
        for t in [0.1, -0.7, 2.5] {
            let d = c.translate(&dv(&[t, 0.0, 0.0]));
            assert!((c.hausdorff_distance(&d) - t.abs()).abs() < 1e-14);
        }
    }
}
