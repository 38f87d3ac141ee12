//! Low-level convex hull kernels in two and three dimensions.
//!
//! These work on fixed-size nalgebra vectors and report combinatorics by
//! input index; `Polytope` assembly happens one level up.

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::{Vector2, Vector3};

use crate::error::{Error, Result};

/// Triangulated boundary of a 3D hull. Triangles are oriented counterclockwise
/// seen from outside.
#[derive(Debug, Clone)]
pub(crate) struct Hull3 {
    pub triangles: Vec<[usize; 3]>,
    pub normals: Vec<Vector3<f64>>,
    pub offsets: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Face {
    v: [usize; 3],
    n: Vector3<f64>,
    d: f64,
    alive: bool,
}

fn make_face(points: &[Vector3<f64>], v: [usize; 3]) -> Face {
    let [a, b, c] = v;
    let n = (points[b] - points[a]).cross(&(points[c] - points[a]));
    let norm = n.norm();
    let n = if norm > 0.0 { n / norm } else { n };
    // offset averaged over the three corners for symmetry
    let d = (n.dot(&points[a]) + n.dot(&points[b]) + n.dot(&points[c])) / 3.0;
    Face {
        v,
        n,
        d,
        alive: true,
    }
}

/// Relative tolerance used by the hull kernels for visibility tests.
pub(crate) const HULL_EPS: f64 = 1e-11;

pub(crate) fn hull3(points: &[Vector3<f64>]) -> Result<Hull3> {
    let m = points.len();
    if m < 4 {
        return Err(Error::DegenerateInput(format!(
            "need at least 4 points in 3D, got {m}"
        )));
    }
    if points.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }

    // initial tetrahedron from extreme points
    let i0 = (0..m)
        .min_by(|&a, &b| points[a].x.total_cmp(&points[b].x))
        .unwrap();
    let i1 = (0..m)
        .max_by(|&a, &b| {
            (points[a] - points[i0])
                .norm_squared()
                .total_cmp(&(points[b] - points[i0]).norm_squared())
        })
        .unwrap();
    let scale = (points[i1] - points[i0]).norm();
    if scale == 0.0 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let eps = HULL_EPS * scale;
    let dir = (points[i1] - points[i0]) / scale;
    let line_dist = |p: &Vector3<f64>| {
        let r = p - points[i0];
        (r - dir * r.dot(&dir)).norm()
    };
    let i2 = (0..m)
        .max_by(|&a, &b| line_dist(&points[a]).total_cmp(&line_dist(&points[b])))
        .unwrap();
    if line_dist(&points[i2]) <= 1e-9 * scale {
        return Err(Error::DegenerateInput("points are collinear".into()));
    }
    let pn = (points[i1] - points[i0])
        .cross(&(points[i2] - points[i0]))
        .normalize();
    let plane_dist = |p: &Vector3<f64>| pn.dot(&(p - points[i0]));
    let i3 = (0..m)
        .max_by(|&a, &b| {
            plane_dist(&points[a])
                .abs()
                .total_cmp(&plane_dist(&points[b]).abs())
        })
        .unwrap();
    if plane_dist(&points[i3]).abs() <= 1e-9 * scale {
        return Err(Error::DegenerateInput("points are coplanar".into()));
    }

    let interior = (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;
    let mut faces: Vec<Face> = Vec::new();
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();

    let push_face = |faces: &mut Vec<Face>,
                     edges: &mut HashMap<(usize, usize), usize>,
                     v: [usize; 3]| {
        let f = make_face(points, v);
        let id = faces.len();
        edges.insert((v[0], v[1]), id);
        edges.insert((v[1], v[2]), id);
        edges.insert((v[2], v[0]), id);
        faces.push(f);
    };

    for tri in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
        let f = make_face(points, tri);
        let v = if f.n.dot(&(interior - points[tri[0]])) > 0.0 {
            [tri[0], tri[2], tri[1]]
        } else {
            tri
        };
        push_face(&mut faces, &mut edges, v);
    }

    let seeds: HashSet<usize> = [i0, i1, i2, i3].into_iter().collect();
    let mut order: Vec<usize> = (0..m).filter(|i| !seeds.contains(i)).collect();
    // farthest points first keeps the intermediate hulls small
    order.sort_by(|&a, &b| {
        (points[b] - interior)
            .norm_squared()
            .total_cmp(&(points[a] - interior).norm_squared())
    });

    let mut visible = Vec::new();
    let mut mark: Vec<bool> = Vec::new();
    for &pi in &order {
        let p = points[pi];
        let mut best = None;
        let mut best_dist = eps;
        for (fid, f) in faces.iter().enumerate() {
            if f.alive {
                let dist = f.n.dot(&p) - f.d;
                if dist > best_dist {
                    best_dist = dist;
                    best = Some(fid);
                }
            }
        }
        let Some(start) = best else { continue };

        mark.clear();
        mark.resize(faces.len(), false);
        visible.clear();
        let mut queue = VecDeque::from([start]);
        mark[start] = true;
        while let Some(fid) = queue.pop_front() {
            visible.push(fid);
            let v = faces[fid].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                if let Some(&nb) = edges.get(&(b, a)) {
                    if !mark[nb] && faces[nb].alive {
                        let dist = faces[nb].n.dot(&p) - faces[nb].d;
                        if dist > eps {
                            mark[nb] = true;
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }

        let mut horizon = Vec::new();
        for &fid in &visible {
            let v = faces[fid].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                match edges.get(&(b, a)) {
                    Some(&nb) if mark[nb] => {}
                    _ => horizon.push((a, b)),
                }
            }
        }
        for &fid in &visible {
            faces[fid].alive = false;
            let v = faces[fid].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if edges.get(&key) == Some(&fid) {
                    edges.remove(&key);
                }
            }
        }
        for (a, b) in horizon {
            push_face(&mut faces, &mut edges, [a, b, pi]);
        }
    }

    let mut out = Hull3 {
        triangles: Vec::new(),
        normals: Vec::new(),
        offsets: Vec::new(),
    };
    for f in faces.into_iter().filter(|f| f.alive) {
        out.triangles.push(f.v);
        out.normals.push(f.n);
        out.offsets.push(f.d);
    }
    Ok(out)
}

impl Hull3 {
    /// Maps each directed edge `(a, b)` to the triangle that contains it.
    pub fn edge_map(&self) -> HashMap<(usize, usize), usize> {
        let mut map = HashMap::with_capacity(self.triangles.len() * 3);
        for (t, v) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                map.insert((v[k], v[(k + 1) % 3]), t);
            }
        }
        map
    }

    /// Groups edge-adjacent triangles whose normals differ by less than
    /// `sin_tol` (sine of the angle) into planar facets.
    pub fn coplanar_groups(&self, sin_tol: f64) -> Vec<Vec<usize>> {
        let n = self.triangles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let edges = self.edge_map();
        for (t, v) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if let Some(&u) = edges.get(&(v[(k + 1) % 3], v[k])) {
                    let nt = self.normals[t];
                    let nu = self.normals[u];
                    if nt.dot(&nu) > 0.0 && nt.cross(&nu).norm() < sin_tol {
                        let (ra, rb) = (find(&mut parent, t), find(&mut parent, u));
                        if ra != rb {
                            parent[ra] = rb;
                        }
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in 0..n {
            let r = find(&mut parent, t);
            groups.entry(r).or_default().push(t);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

/// Counterclockwise hull of planar points (Andrew's monotone chain), with
/// collinear boundary points removed. Returns input indices.
pub(crate) fn hull2(points: &[Vector2<f64>]) -> Result<Vec<usize>> {
    let m = points.len();
    if m < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points in 2D, got {m}"
        )));
    }
    if points.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .x
            .total_cmp(&points[b].x)
            .then(points[a].y.total_cmp(&points[b].y))
    });
    let scale = idx
        .iter()
        .map(|&i| (points[i] - points[idx[0]]).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let eps = HULL_EPS * scale * scale;
    let cross = |o: usize, a: usize, b: usize| {
        let u = points[a] - points[o];
        let v = points[b] - points[o];
        u.x * v.y - u.y * v.x
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= eps
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= eps
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateInput("points are collinear".into()));
    }
    Ok(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points() -> Vec<Vector3<f64>> {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector3::new(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        pts
    }

    #[test]
    fn cube_hull_is_closed_and_merges_to_six_faces() {
        let mut pts = cube_points();
        pts.push(Vector3::new(0.5, 0.5, 0.5));
        pts.push(Vector3::new(0.5, 0.5, 1.0)); // on a face
        let h = hull3(&pts).unwrap();
        let edges = h.edge_map();
        for &(a, b) in edges.keys() {
            assert!(edges.contains_key(&(b, a)), "open edge {a}-{b}");
        }
        assert_eq!(h.coplanar_groups(1e-8).len(), 6);
        for t in &h.triangles {
            assert!(!t.contains(&8));
        }
    }

    #[test]
    fn coplanar_input_is_rejected() {
        let pts: Vec<_> = (0..6)
            .map(|i| Vector3::new(i as f64, (i * i) as f64, 0.0))
            .collect();
        assert!(matches!(hull3(&pts), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn square_hull_drops_collinear_points() {
        let pts = vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(1.0, 0.0),
            Vector2::new(0.5, 0.0),
            Vector2::new(1.0, 1.0),
            Vector2::new(0.0, 1.0),
            Vector2::new(0.5, 0.5),
        ];
        let h = hull2(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&2) && !h.contains(&5));
    }
}
