//! Mean width `M(K) = (2/|S^{n-1}|) ∫ h(K)`.
//!
//! On the normal cone of a vertex `v` the support function is the linear map
//! `ν ↦ v·ν`, so the sphere integral splits into `Σ_v v·∫_{cone(v)} ν dσ`.
//! Each cone is a convex spherical polygon; in the plane the integral is
//! exact, in space it is a Gauss-Legendre rule on small spherical
//! triangles, which is smooth and converges spectrally.

use std::f64::consts::PI;

use nalgebra::{DVector, Vector3};

use super::polytope::Polytope;
use crate::quadrature::GaussLegendre;

/// Spherical triangles are refined until every arc is shorter than this.
const MAX_ARC: f64 = 0.35;
const CONE_ORDER: usize = 8;

fn v3(v: &DVector<f64>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

impl Polytope {
    pub fn mean_width(&self) -> f64 {
        if self.dim() == 2 {
            mean_width_2d(self)
        } else {
            mean_width_3d(self)
        }
    }

    /// `(1/4π) Σ_e ℓ_e θ_e` over edges with exterior dihedral angles `θ_e`.
    /// Only meaningful in three dimensions.
    pub fn mean_width_edges(&self) -> f64 {
        assert_eq!(self.dim(), 3, "edge formula needs three dimensions");
        let facets = self.facets();
        let mut sum = 0.0;
        for (i, f) in facets.iter().enumerate() {
            let vs = &f.vertices;
            for k in 0..vs.len() {
                let (a, b) = (vs[k], vs[(k + 1) % vs.len()]);
                // the neighbour across (a, b) lists the edge as (b, a)
                let Some(g) = facets.iter().enumerate().find_map(|(j, g)| {
                    (j != i && contains_edge(&g.vertices, b, a)).then_some(g)
                }) else {
                    continue;
                };
                let len = (&self.vertices()[a] - &self.vertices()[b]).norm();
                let theta = v3(&f.normal).angle(&v3(&g.normal));
                sum += 0.5 * len * theta;
            }
        }
        sum / (4.0 * PI)
    }

    /// Product rule on the sphere: Gauss-Legendre in `cos θ` times a uniform
    /// rule in `φ`. Converges slowly because `h` has kinks.
    pub fn mean_width_grid(&self, n_theta: usize, n_phi: usize) -> f64 {
        assert_eq!(self.dim(), 3, "grid quadrature needs three dimensions");
        let gl = GaussLegendre::new(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut total = 0.0;
        for (&z, &w) in gl.nodes.iter().zip(&gl.weights) {
            let r = (1.0 - z * z).sqrt();
            for k in 0..n_phi {
                let phi = (k as f64 + 0.5) * dphi;
                let nu = DVector::from_vec(vec![r * phi.cos(), r * phi.sin(), z]);
                total += w * dphi * self.support(&nu);
            }
        }
        2.0 * total / (4.0 * PI)
    }
}

fn contains_edge(ring: &[usize], a: usize, b: usize) -> bool {
    (0..ring.len()).any(|k| ring[k] == a && ring[(k + 1) % ring.len()] == b)
}

fn incident_facets(p: &Polytope) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); p.vertices().len()];
    for (j, f) in p.facets().iter().enumerate() {
        for &v in &f.vertices {
            inc[v].push(j);
        }
    }
    inc
}

fn mean_width_2d(p: &Polytope) -> f64 {
    let inc = incident_facets(p);
    let mut total = 0.0;
    for (v, fs) in p.vertices().iter().zip(&inc) {
        let mut angles: Vec<f64> = fs
            .iter()
            .map(|&j| {
                let u = &p.facets()[j].normal;
                u[1].atan2(u[0])
            })
            .collect();
        if angles.len() != 2 {
            continue;
        }
        // the cone is the shorter arc between the two normals
        angles.sort_by(f64::total_cmp);
        let (mut a, mut b) = (angles[0], angles[1]);
        if b - a > PI {
            std::mem::swap(&mut a, &mut b);
            b += 2.0 * PI;
        }
        let ix = b.sin() - a.sin();
        let iy = a.cos() - b.cos();
        total += v[0] * ix + v[1] * iy;
    }
    2.0 * total / (2.0 * PI)
}

fn mean_width_3d(p: &Polytope) -> f64 {
    let gl = GaussLegendre::new(CONE_ORDER);
    let nodes = gl.mapped(0.0, 1.0);
    let inc = incident_facets(p);
    let mut total = 0.0;
    for (v, fs) in p.vertices().iter().zip(&inc) {
        let normals: Vec<Vector3<f64>> = fs.iter().map(|&j| v3(&p.facets()[j].normal)).collect();
        let ring = order_cone(&normals);
        let mut integral = Vector3::zeros();
        for k in 1..ring.len() - 1 {
            integral += spherical_triangle(ring[0], ring[k], ring[k + 1], &nodes);
        }
        total += v3(v).dot(&integral);
    }
    2.0 * total / (4.0 * PI)
}

/// Orders the generators of a pointed cone cyclically.
fn order_cone(normals: &[Vector3<f64>]) -> Vec<Vector3<f64>> {
    let c = normals.iter().sum::<Vector3<f64>>().normalize();
    let seed = if c.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = (seed - c * c.dot(&seed)).normalize();
    let e2 = c.cross(&e1);
    let mut keyed: Vec<(f64, Vector3<f64>)> = normals
        .iter()
        .map(|n| (n.dot(&e2).atan2(n.dot(&e1)), *n))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, n)| n).collect()
}

/// `∫ ν dσ` over the spherical triangle with unit corners `a, b, c`.
fn spherical_triangle(
    a: Vector3<f64>,
    b: Vector3<f64>,
    c: Vector3<f64>,
    nodes: &[(f64, f64)],
) -> Vector3<f64> {
    let longest = a.angle(&b).max(b.angle(&c)).max(c.angle(&a));
    if longest > MAX_ARC {
        let ab = (a + b).normalize();
        let bc = (b + c).normalize();
        let ca = (c + a).normalize();
        return spherical_triangle(a, ab, ca, nodes)
            + spherical_triangle(ab, b, bc, nodes)
            + spherical_triangle(ca, bc, c, nodes)
            + spherical_triangle(ab, bc, ca, nodes);
    }
    // radial projection of the flat triangle; q(s,t) = a + s(b-a) + st(c-b)
    let cross = (b - a).cross(&(c - b));
    let jac = cross.norm();
    if jac == 0.0 {
        return Vector3::zeros();
    }
    let height = (cross / jac).dot(&a).abs();
    let mut sum = Vector3::zeros();
    for &(s, ws) in nodes {
        for &(t, wt) in nodes {
            let q = a + (b - a) * s + (c - b) * (s * t);
            let r2 = q.norm_squared();
            sum += q * (ws * wt * s * height / (r2 * r2));
        }
    }
    sum * jac
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
    fn octant_integral_is_exact() {
        let gl = GaussLegendre::new(CONE_ORDER);
        let nodes = gl.mapped(0.0, 1.0);
        let i = spherical_triangle(Vector3::x(), Vector3::y(), Vector3::z(), &nodes);
        // ∫ x over the positive octant equals π/4
        for k in 0..3 {
            assert!((i[k] - PI / 4.0).abs() < 1e-13, "{}", i[k]);
        }
    }

    #[test]
    fn cube_mean_width() {
        let c = cube();
        assert!((c.mean_width() - 1.5).abs() < 1e-13);
        assert!((c.mean_width_edges() - 1.5).abs() < 1e-14);
        assert!((c.mean_width_grid(64, 128) - 1.5).abs() < 1e-3);
        // translation does not matter
        let t = c.translate(&dv(&[3.0, -1.0, 2.0]));
        assert!((t.mean_width() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn square_mean_width() {
        let sq = convex_hull(&[
            dv(&[0.0, 0.0]),
            dv(&[1.0, 0.0]),
            dv(&[1.0, 1.0]),
            dv(&[0.0, 1.0]),
        ])
        .unwrap();
        assert!((sq.mean_width() - 4.0 / PI).abs() < 1e-15);
        let tri = convex_hull(&[dv(&[0.0, 0.0]), dv(&[3.0, 0.0]), dv(&[0.0, 4.0])]).unwrap();
        assert!((tri.mean_width() - 12.0 / PI).abs() < 1e-14);
    }
}
