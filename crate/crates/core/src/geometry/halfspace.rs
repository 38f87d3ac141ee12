//! Vertex enumeration of `{x : u_i·x ≤ h_i}` around an interior origin.
//!
//! With every `h_i > 0` the region is the polar of the hull of the dual
//! points `u_i / h_i`: dual facets are primal vertices and dual edges are
//! primal ridges. The kernel also returns the facet areas and the first
//! variation of the areas with respect to the offsets, which is the Hessian
//! of the volume.

use nalgebra::{DMatrix, DVector, Vector2, Vector3};

use super::hull::{hull2, hull3};
use crate::error::{Error, Result};

/// A ridge between facets `i < j` with its length (one in the plane) and the
/// cosine and sine of the angle between the two normals.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ridge {
    pub i: usize,
    pub j: usize,
    pub len: f64,
    pub cos: f64,
    pub sin: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub dim: usize,
    /// Facet areas indexed like the input halfspaces; redundant ones get 0.
    pub areas: Vec<f64>,
    pub volume: f64,
    /// One point per dual facet; several can coincide at degenerate vertices.
    pub vertices: Vec<DVector<f64>>,
    pub ridges: Vec<Ridge>,
}

const ORIGIN_EPS: f64 = 1e-12;

pub(crate) fn kernel(normals: &[DVector<f64>], offsets: &[f64]) -> Result<Kernel> {
    let dim = normals.first().map_or(0, |u| u.len());
    if normals.len() != offsets.len() {
        return Err(Error::InvalidArgument("normals and offsets differ in length".into()));
    }
    if let Some(h) = offsets.iter().find(|h| !(h.is_finite() && **h > 0.0)) {
        return Err(Error::DegenerateInput(format!(
            "kernel needs positive offsets, got {h}"
        )));
    }
    match dim {
        2 => kernel2(normals, offsets),
        3 => kernel3(normals, offsets),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn finish(
    dim: usize,
    offsets: &[f64],
    areas: Vec<f64>,
    vertices: Vec<DVector<f64>>,
    ridges: Vec<Ridge>,
) -> Kernel {
    let areas: Vec<f64> = areas.into_iter().map(|a| a.max(0.0)).collect();
    let volume = areas.iter().zip(offsets).map(|(a, h)| a * h).sum::<f64>() / dim as f64;
    Kernel {
        dim,
        areas,
        volume,
        vertices,
        ridges,
    }
}

fn ridge(i: usize, j: usize, len: f64, ui: &DVector<f64>, uj: &DVector<f64>) -> Ridge {
    let cos = ui.dot(uj).clamp(-1.0, 1.0);
    let sin = if ui.len() == 3 {
        Vector3::new(ui[0], ui[1], ui[2])
            .cross(&Vector3::new(uj[0], uj[1], uj[2]))
            .norm()
    } else {
        (ui[0] * uj[1] - ui[1] * uj[0]).abs()
    };
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    Ridge { i, j, len, cos, sin }
}

fn kernel3(normals: &[DVector<f64>], offsets: &[f64]) -> Result<Kernel> {
    let dual: Vec<Vector3<f64>> = normals
        .iter()
        .zip(offsets)
        .map(|(u, h)| Vector3::new(u[0], u[1], u[2]) / *h)
        .collect();
    let scale = dual.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let hull = hull3(&dual).map_err(|_| Error::Unbounded)?;
    if hull.offsets.iter().any(|&d| d <= ORIGIN_EPS * scale) {
        return Err(Error::Unbounded);
    }
    let vertices3: Vec<Vector3<f64>> = hull
        .normals
        .iter()
        .zip(&hull.offsets)
        .map(|(n, d)| n / *d)
        .collect();
    let edges = hull.edge_map();
    let mut anchors: Vec<Option<Vector3<f64>>> = vec![None; normals.len()];
    for (t, v) in hull.triangles.iter().enumerate() {
        for &i in v {
            anchors[i].get_or_insert(vertices3[t]);
        }
    }
    let u3: Vec<Vector3<f64>> = normals.iter().map(|u| Vector3::new(u[0], u[1], u[2])).collect();
    let mut areas = vec![0.0; normals.len()];
    let mut ridges = Vec::with_capacity(hull.triangles.len() * 3 / 2);
    for (t, v) in hull.triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (v[k], v[(k + 1) % 3]);
            let Some(&s) = edges.get(&(b, a)) else {
                return Err(Error::DegenerateInput("dual hull is not closed".into()));
            };
            // fan triangle from the anchor; only vertex positions enter, so
            // nearly parallel neighbours do not amplify rounding
            let p = anchors[a].expect("vertex of a triangle");
            areas[a] += 0.5 * (vertices3[s] - p).cross(&(vertices3[t] - p)).dot(&u3[a]);
            if a < b {
                // signed, so slightly reflex dual edges contribute consistently
                let dir = u3[a].cross(&u3[b]);
                let len = (vertices3[t] - vertices3[s]).dot(&dir) / dir.norm();
                ridges.push(ridge(a, b, len, &normals[a], &normals[b]));
            }
        }
    }
    let vertices = vertices3
        .iter()
        .map(|w| DVector::from_column_slice(w.as_slice()))
        .collect();
    Ok(finish(3, offsets, areas, vertices, ridges))
}

fn kernel2(normals: &[DVector<f64>], offsets: &[f64]) -> Result<Kernel> {
    let dual: Vec<Vector2<f64>> = normals
        .iter()
        .zip(offsets)
        .map(|(u, h)| Vector2::new(u[0], u[1]) / *h)
        .collect();
    let scale = dual.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let ring = hull2(&dual).map_err(|_| Error::Unbounded)?;
    let m = ring.len();
    let mut vertices = Vec::with_capacity(m);
    let mut ridges = Vec::with_capacity(m);
    for k in 0..m {
        let (a, b) = (ring[k], ring[(k + 1) % m]);
        let d = dual[b] - dual[a];
        let n = Vector2::new(d.y, -d.x);
        let off = n.dot(&dual[a]);
        if off <= ORIGIN_EPS * n.norm() * scale {
            return Err(Error::Unbounded);
        }
        vertices.push(n / off);
        ridges.push(ridge(a, b, 1.0, &normals[a], &normals[b]));
    }
    // facet ring[k] runs from the vertex shared with ring[k-1] to the one
    // shared with ring[k+1]
    let mut areas = vec![0.0; normals.len()];
    for k in 0..m {
        let i = ring[k];
        let (from, to) = (vertices[(k + m - 1) % m], vertices[k]);
        let tangent = Vector2::new(-normals[i][1], normals[i][0]);
        areas[i] = (to - from).dot(&tangent).abs();
    }
    let vertices = vertices
        .iter()
        .map(|w: &Vector2<f64>| DVector::from_column_slice(w.as_slice()))
        .collect();
    Ok(finish(2, offsets, areas, vertices, ridges))
}

impl Kernel {
    /// Jacobian of the facet areas with respect to the offsets.
    pub fn area_jacobian(&self) -> DMatrix<f64> {
        let m = self.areas.len();
        let mut hess = DMatrix::zeros(m, m);
        for r in &self.ridges {
            let off = r.len / r.sin;
            hess[(r.i, r.j)] += off;
            hess[(r.j, r.i)] += off;
            hess[(r.i, r.i)] -= off * r.cos;
            hess[(r.j, r.j)] -= off * r.cos;
        }
        hess
    }

    /// Mean of the enumerated vertices, an interior point of the region.
    pub fn vertex_mean(&self) -> DVector<f64> {
        let n = self.vertices.len() as f64;
        self.vertices
            .iter()
            .fold(DVector::zeros(self.dim), |acc, v| acc + v)
            / n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis_normals(dim: usize) -> Vec<DVector<f64>> {
        let mut out = Vec::new();
        for k in 0..dim {
            for s in [1.0, -1.0] {
                let mut e = DVector::zeros(dim);
                e[k] = s;
                out.push(e);
            }
        }
        out
    }

    #[test]
    fn box_areas_and_volume() {
        let u = axis_normals(3);
        // box [-1,2] x [-0.5,0.5] x [-1,1]
        let h = [2.0, 1.0, 0.5, 0.5, 1.0, 1.0];
        let k = kernel(&u, &h).unwrap();
        let expect = [2.0, 2.0, 6.0, 6.0, 3.0, 3.0];
        for (a, e) in k.areas.iter().zip(expect) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
        assert!((k.volume - 6.0).abs() < 1e-12);
    }

    #[test]
    fn area_jacobian_matches_finite_differences() {
        let u: Vec<DVector<f64>> = [
            [1.0, 0.2, 0.1],
            [-1.0, 0.3, -0.2],
            [0.1, 1.0, 0.0],
            [0.0, -1.0, 0.4],
            [0.2, 0.1, 1.0],
            [-0.3, 0.0, -1.0],
            [0.6, 0.6, 0.6],
        ]
        .iter()
        .map(|v| DVector::from_column_slice(v).normalize())
        .collect();
        let h = vec![1.0, 1.1, 0.9, 1.2, 1.0, 0.8, 1.05];
        let k = kernel(&u, &h).unwrap();
        let jac = k.area_jacobian();
        let eps = 1e-6;
        for j in 0..h.len() {
            let mut hp = h.clone();
            let mut hm = h.clone();
            hp[j] += eps;
            hm[j] -= eps;
            let ap = kernel(&u, &hp).unwrap().areas;
            let am = kernel(&u, &hm).unwrap().areas;
            for i in 0..h.len() {
                let fd = (ap[i] - am[i]) / (2.0 * eps);
                assert!((fd - jac[(i, j)]).abs() < 1e-6, "({i},{j}): {fd} vs {}", jac[(i, j)]);
            }
        }
        // gradient of the volume is the area vector
        for j in 0..h.len() {
            let mut hp = h.clone();
            let mut hm = h.clone();
            hp[j] += eps;
            hm[j] -= eps;
            let fd = (kernel(&u, &hp).unwrap().volume - kernel(&u, &hm).unwrap().volume)
                / (2.0 * eps);
            assert!((fd - k.areas[j]).abs() < 1e-7);
        }
    }

    #[test]
    fn planar_square() {
        let u = axis_normals(2);
        let k = kernel(&u, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        for a in &k.areas {
            assert!((a - 2.0).abs() < 1e-12);
        }
        assert!((k.volume - 4.0).abs() < 1e-12);
        assert_eq!(k.vertices.len(), 4);
    }

    #[test]
    fn open_region_is_unbounded() {
        let mut u = axis_normals(3);
        u.pop();
        assert!(matches!(kernel(&u, &[1.0; 5]), Err(Error::Unbounded)));
    }
}
