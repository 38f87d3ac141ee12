use nalgebra::{DMatrix, DVector, Vector2, Vector3};

use super::halfspace::kernel;
use super::hull::{hull2, hull3};
use super::lp::chebyshev_center;
use super::measure::{Atom, DirectionalMeasure, MERGE_ANGLE};
use crate::error::{Error, Result};

/// Relative tolerance on geometric predicates (incidence, containment).
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: DVector<f64>,
    pub offset: f64,
    pub area: f64,
    /// Indices into the vertex list; counterclockwise seen from outside in
    /// three dimensions, the two endpoints in the plane.
    pub vertices: Vec<usize>,
}

/// Bounded convex polytope with nonempty interior, in dimension 2 or 3.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<DVector<f64>>,
    facets: Vec<Facet>,
    centroid: DVector<f64>,
    volume: f64,
    scale: f64,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn v3(v: &DVector<f64>) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

fn diameter(points: &[DVector<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

fn angle_between(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    2.0 * (0.5 * (a - b).norm()).min(1.0).asin()
}

/// Greedy clustering of points closer than `tol`.
fn dedupe(points: Vec<DVector<f64>>, tol: f64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (q - &p).norm() <= tol) {
            out.push(p);
        }
    }
    out
}

/// Computes the convex hull of a point set.
pub fn convex_hull(points: &[DVector<f64>]) -> Result<Polytope> {
    let dim = points
        .first()
        .ok_or_else(|| Error::DegenerateInput("empty point set".into()))?
        .len();
    check_dim(dim)?;
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.len(),
        });
    }
    let mut planes = Vec::new();
    let mut cand = Vec::new();
    if dim == 3 {
        let pts: Vec<Vector3<f64>> = points.iter().map(v3).collect();
        let hull = hull3(&pts)?;
        let mut used = vec![false; pts.len()];
        for group in hull.coplanar_groups(MERGE_ANGLE) {
            let mut area_vec = Vector3::zeros();
            for &t in &group {
                let [a, b, c] = hull.triangles[t];
                area_vec += (pts[b] - pts[a]).cross(&(pts[c] - pts[a]));
                used[a] = true;
                used[b] = true;
                used[c] = true;
            }
            let norm = area_vec.norm();
            if norm == 0.0 {
                continue;
            }
            let u = area_vec / norm;
            let offset = group
                .iter()
                .flat_map(|&t| hull.triangles[t])
                .map(|i| u.dot(&pts[i]))
                .fold(f64::NEG_INFINITY, f64::max);
            planes.push((DVector::from_column_slice(u.as_slice()), offset));
        }
        cand.extend((0..pts.len()).filter(|&i| used[i]).map(|i| points[i].clone()));
    } else {
        let pts: Vec<Vector2<f64>> = points.iter().map(|p| Vector2::new(p[0], p[1])).collect();
        let ring = hull2(&pts)?;
        let m = ring.len();
        for k in 0..m {
            let (a, b) = (pts[ring[k]], pts[ring[(k + 1) % m]]);
            let d = b - a;
            let u = Vector2::new(d.y, -d.x).normalize();
            let offset = u.dot(&a).max(u.dot(&b));
            planes.push((DVector::from_column_slice(u.as_slice()), offset));
        }
        cand.extend(ring.iter().map(|&i| points[i].clone()));
    }
    Polytope::assemble(dim, cand, planes)
}

/// Intersects the halfspaces `{x : u_i·x ≤ h_i}`. Normals need not be unit.
pub fn halfspace_intersection(normals: &[DVector<f64>], offsets: &[f64]) -> Result<Polytope> {
    if normals.len() != offsets.len() {
        return Err(Error::InvalidArgument("normals and offsets differ in length".into()));
    }
    let dim = normals.first().ok_or(Error::Unbounded)?.len();
    check_dim(dim)?;
    let mut us: Vec<DVector<f64>> = Vec::with_capacity(normals.len());
    let mut hs: Vec<f64> = Vec::with_capacity(normals.len());
    for (u, &h) in normals.iter().zip(offsets) {
        if u.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: u.len(),
            });
        }
        let norm = u.norm();
        if !(norm > 0.0 && norm.is_finite() && h.is_finite()) {
            return Err(Error::InvalidArgument("halfspace with zero or non-finite data".into()));
        }
        let (u, h) = (u / norm, h / norm);
        // parallel duplicates: the tighter one binds
        match us.iter().position(|w| angle_between(w, &u) < MERGE_ANGLE) {
            Some(k) => hs[k] = hs[k].min(h),
            None => {
                us.push(u);
                hs.push(h);
            }
        }
    }
    if us.len() <= dim {
        return Err(Error::Unbounded);
    }
    let hmax = hs.iter().fold(0.0f64, |a, h| a.max(h.abs()));
    let rows: Vec<Vec<f64>> = us.iter().map(|u| u.iter().copied().collect()).collect();
    let cap = 1e6 * (1.0 + hmax);
    let (center, r) = chebyshev_center(&rows, &hs, cap)?;
    if r <= 1e-12 * (1.0 + hmax) {
        return Err(Error::Empty);
    }
    let c = DVector::from_vec(center);
    let shifted: Vec<f64> = us.iter().zip(&hs).map(|(u, h)| h - u.dot(&c)).collect();
    let k = kernel(&us, &shifted)?;
    let cand: Vec<DVector<f64>> = k.vertices.iter().map(|w| w + &c).collect();
    let planes = us.into_iter().zip(hs).collect();
    Polytope::assemble(dim, cand, planes).map_err(|e| match e {
        Error::DegenerateInput(_) => Error::Empty,
        other => other,
    })
}

impl Polytope {
    /// Builds a polytope from boundary points and candidate planes. Planes
    /// without a full-dimensional set of incident vertices are dropped, as
    /// are points that are not vertices. Normals of kept planes are used
    /// verbatim.
    pub(crate) fn assemble(
        dim: usize,
        points: Vec<DVector<f64>>,
        planes: Vec<(DVector<f64>, f64)>,
    ) -> Result<Self> {
        let rough = diameter_bound(&points);
        let points = dedupe(points, GEOM_TOL * rough);
        let scale = diameter(&points);
        if !(scale > 0.0) {
            return Err(Error::DegenerateInput("polytope has zero diameter".into()));
        }
        let tol = GEOM_TOL * scale;

        // merge parallel planes, keeping the tighter offset
        let mut merged: Vec<(DVector<f64>, f64)> = Vec::with_capacity(planes.len());
        for (u, h) in planes {
            match merged
                .iter()
                .position(|(w, _)| angle_between(w, &u) < MERGE_ANGLE)
            {
                Some(k) => merged[k].1 = merged[k].1.min(h),
                None => merged.push((u, h)),
            }
        }

        let incident = |p: &DVector<f64>| -> Vec<usize> {
            merged
                .iter()
                .enumerate()
                .filter(|(_, (u, h))| (u.dot(p) - h).abs() <= tol)
                .map(|(k, _)| k)
                .collect()
        };
        let mut keep = Vec::new();
        for p in &points {
            let inc = incident(p);
            if inc.len() < dim {
                continue;
            }
            let m = DMatrix::from_fn(inc.len(), dim, |r, c| merged[inc[r]].0[c]);
            if m.singular_values().min() > 1e-9 {
                keep.push(p.clone());
            }
        }

        let mut facets = Vec::new();
        for (u, h) in &merged {
            let on: Vec<usize> = keep
                .iter()
                .enumerate()
                .filter(|(_, p)| (u.dot(p) - h).abs() <= tol)
                .map(|(i, _)| i)
                .collect();
            if on.len() < dim {
                continue;
            }
            let (ordered, area) = order_facet(dim, u, &on, &keep);
            if area <= 1e-12 * scale.powi(dim as i32 - 1) {
                continue;
            }
            facets.push(Facet {
                normal: u.clone(),
                offset: *h,
                area,
                vertices: ordered,
            });
        }
        if facets.len() <= dim {
            return Err(Error::DegenerateInput("fewer than n+1 facets".into()));
        }

        // drop vertices not used by any facet and reindex
        let mut remap = vec![usize::MAX; keep.len()];
        let mut vertices = Vec::new();
        for f in &mut facets {
            for v in &mut f.vertices {
                if remap[*v] == usize::MAX {
                    remap[*v] = vertices.len();
                    vertices.push(keep[*v].clone());
                }
                *v = remap[*v];
            }
        }

        let volume = facets.iter().map(|f| f.offset * f.area).sum::<f64>() / dim as f64;
        if !(volume > 1e-12 * scale.powi(dim as i32)) {
            return Err(Error::DegenerateInput("polytope has no interior".into()));
        }
        let mut poly = Polytope {
            dim,
            vertices,
            facets,
            centroid: DVector::zeros(dim),
            volume,
            scale,
        };
        let (_, centroid) = poly.cone_decomposition();
        poly.centroid = centroid;
        Ok(poly)
    }

    /// Sums signed simplices from the vertex mean over a fan of every facet;
    /// returns (volume, centroid). Independent of the offsets and areas.
    fn cone_decomposition(&self) -> (f64, DVector<f64>) {
        let n = self.dim;
        let apex = self.vertex_mean();
        let mut vol = 0.0;
        let mut moment = DVector::zeros(n);
        for f in &self.facets {
            let vs = &f.vertices;
            if n == 3 {
                let a = v3(&self.vertices[vs[0]]) - v3(&apex);
                for k in 1..vs.len() - 1 {
                    let b = v3(&self.vertices[vs[k]]) - v3(&apex);
                    let c = v3(&self.vertices[vs[k + 1]]) - v3(&apex);
                    let v = a.dot(&b.cross(&c)) / 6.0;
                    vol += v;
                    let cen = (a + b + c) / 4.0;
                    moment += DVector::from_column_slice(cen.as_slice()) * v;
                }
            } else {
                let a = &self.vertices[vs[0]] - &apex;
                let b = &self.vertices[vs[1]] - &apex;
                let v = (a[0] * b[1] - a[1] * b[0]) / 2.0;
                vol += v;
                moment += (&a + &b) / 3.0 * v;
            }
        }
        (vol, apex + moment / vol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn centroid(&self) -> &DVector<f64> {
        &self.centroid
    }

    /// Diameter of the vertex set.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Volume from the facet cones `V = (1/n) Σ h_i a_i`.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Volume by triangulating the boundary and coning from the vertex mean.
    pub fn triangulated_volume(&self) -> f64 {
        self.cone_decomposition().0
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.area).sum()
    }

    pub fn vertex_mean(&self) -> DVector<f64> {
        self.vertices
            .iter()
            .fold(DVector::zeros(self.dim), |acc, v| acc + v)
            / self.vertices.len() as f64
    }

    pub fn surface_area_measure(&self) -> DirectionalMeasure {
        let atoms = self
            .facets
            .iter()
            .map(|f| Atom {
                dir: f.normal.clone(),
                weight: f.area,
            })
            .collect();
        DirectionalMeasure::new(self.dim, atoms).expect("facets have positive area")
    }

    /// `h(P)(ν) = max_v v·ν`; `nu` need not be normalized.
    pub fn support(&self, nu: &DVector<f64>) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(nu))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        let tol = GEOM_TOL * self.scale;
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + tol)
    }

    pub fn translate(&self, t: &DVector<f64>) -> Polytope {
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v += t;
        }
        for f in &mut p.facets {
            f.offset += f.normal.dot(t);
        }
        p.centroid += t;
        p
    }

    /// Dilation about the origin by `s > 0`.
    pub fn dilate(&self, s: f64) -> Polytope {
        assert!(s > 0.0, "dilation factor must be positive");
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v *= s;
        }
        let sa = s.powi(self.dim as i32 - 1);
        for f in &mut p.facets {
            f.offset *= s;
            f.area *= sa;
        }
        p.centroid *= s;
        p.volume *= s.powi(self.dim as i32);
        p.scale *= s;
        p
    }

    /// Translate with the centroid at the origin.
    pub fn centered(&self) -> Polytope {
        self.translate(&(-&self.centroid))
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a + b);
            }
        }
        convex_hull(&pts)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let (normals, offsets): (Vec<_>, Vec<_>) = self
            .facets
            .iter()
            .chain(&other.facets)
            .map(|f| (f.normal.clone(), f.offset))
            .unzip();
        halfspace_intersection(&normals, &offsets)
    }

    /// Checks the structural invariants; returns a description of the first
    /// violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let tol = GEOM_TOL * self.scale;
        for f in &self.facets {
            if (f.normal.norm() - 1.0).abs() > 1e-12 {
                return Err("facet normal is not unit".into());
            }
            if f.vertices.len() < self.dim {
                return Err("facet with fewer than n vertices".into());
            }
            for v in &self.vertices {
                if f.normal.dot(v) > f.offset + tol {
                    return Err("vertex outside a facet plane".into());
                }
            }
            for &i in &f.vertices {
                if (f.normal.dot(&self.vertices[i]) - f.offset).abs() > tol {
                    return Err("facet vertex off its plane".into());
                }
            }
        }
        if !(self.volume > 0.0) {
            return Err("empty interior".into());
        }
        Ok(())
    }
}

fn diameter_bound(points: &[DVector<f64>]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// Orders the vertices of one facet and returns them with the facet area.
fn order_facet(
    dim: usize,
    u: &DVector<f64>,
    on: &[usize],
    points: &[DVector<f64>],
) -> (Vec<usize>, f64) {
    if dim == 2 {
        let t = DVector::from_vec(vec![-u[1], u[0]]);
        let (lo, hi) = on.iter().fold((on[0], on[0]), |(lo, hi), &i| {
            let s = t.dot(&points[i]);
            (
                if s < t.dot(&points[lo]) { i } else { lo },
                if s > t.dot(&points[hi]) { i } else { hi },
            )
        });
        let len = (&points[hi] - &points[lo]).norm();
        return (vec![lo, hi], len);
    }
    let u3 = v3(u);
    let center = on.iter().map(|&i| v3(&points[i])).sum::<Vector3<f64>>() / on.len() as f64;
    let seed = if u3.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = (seed - u3 * u3.dot(&seed)).normalize();
    let e2 = u3.cross(&e1);
    let mut keyed: Vec<(f64, usize)> = on
        .iter()
        .map(|&i| {
            let d = v3(&points[i]) - center;
            (d.dot(&e2).atan2(d.dot(&e1)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ordered: Vec<usize> = keyed.into_iter().map(|(_, i)| i).collect();
    let mut area_vec = Vector3::zeros();
    for k in 0..ordered.len() {
        let a = v3(&points[ordered[k]]) - center;
        let b = v3(&points[ordered[(k + 1) % ordered.len()]]) - center;
        area_vec += a.cross(&b);
    }
    (ordered, 0.5 * area_vec.dot(&u3))
}
