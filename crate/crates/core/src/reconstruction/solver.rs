//! Discrete Minkowski problem: the polytope with prescribed facet normals
//! and facet areas.
//!
//! Offsets `h` parametrize `P(h) = {x : ξ_i·x ≤ h_i}`. The volume is smooth
//! in `h` with gradient the facet areas, so maximizing `V(h)^{1/n}` on the
//! slice `Σ f_i h_i = 1` lands where the areas are proportional to `f`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::halfspace::{kernel, Kernel};
use crate::geometry::{DirectionalMeasure, Polytope};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Relative tolerance on every facet area.
    pub area_tol: f64,
    pub max_iter: usize,
    /// Step halvings before the Newton direction is abandoned.
    pub max_halvings: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            area_tol: 1e-10,
            max_iter: 500,
            max_halvings: 5,
        }
    }
}

impl SolverConfig {
    pub fn with_tol(area_tol: f64) -> Self {
        Self {
            area_tol,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.area_tol > 0.0) || self.max_iter == 0 {
            return Err(Error::InvalidArgument(
                "solver needs area_tol > 0 and max_iter >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub iters: usize,
    pub max_rel_area_err: f64,
}

/// No step may shrink a facet below this fraction of its current area; a
/// facet that vanishes mid-run leaves a flat direction Newton cannot see past.
const FRACTION_TO_BOUNDARY: f64 = 0.1;

const ROUNDING_SAFETY: f64 = 8.0;

struct Problem {
    dim: usize,
    normals: Vec<DVector<f64>>,
    /// Target weights normalized to unit total.
    g: Vec<f64>,
}

struct Iterate {
    h: Vec<f64>,
    k: Kernel,
    phi: f64,
}

impl Problem {
    fn eval(&self, h: Vec<f64>) -> Option<Iterate> {
        if h.iter().any(|&x| !(x > 0.0)) {
            return None;
        }
        let k = kernel(&self.normals, &h).ok()?;
        if !(k.volume > 0.0) {
            return None;
        }
        let slice: f64 = self.g.iter().zip(&h).map(|(g, h)| g * h).sum();
        let phi = k.volume.powf(1.0 / self.dim as f64) / slice;
        Some(Iterate { h, k, phi })
    }

    fn error(&self, it: &Iterate) -> f64 {
        let total: f64 = it.k.areas.iter().sum();
        it.k
            .areas
            .iter()
            .zip(&self.g)
            .map(|(a, g)| (a / total - g).abs() / g)
            .fold(0.0, f64::max)
    }

    /// Whether every facet is within `tol` of its target, or within what
    /// rounding in the offsets allows: a facet between nearly parallel
    /// neighbours moves by `ε|h|/sin θ` under a one-ulp change of `h`.
    fn converged(&self, it: &Iterate, tol: f64) -> bool {
        let total: f64 = it.k.areas.iter().sum();
        let hmax = it.h.iter().copied().fold(0.0, f64::max);
        let mut sens = vec![0.0; self.g.len()];
        for r in &it.k.ridges {
            let s = (r.len / r.sin).abs() * (1.0 + r.cos.abs());
            sens[r.i] += s;
            sens[r.j] += s;
        }
        it.k.areas.iter().zip(&self.g).zip(&sens).all(|((a, g), s)| {
            let floor = ROUNDING_SAFETY * f64::EPSILON * hmax * s / a;
            (a / total - g).abs() / g <= tol + floor
        })
    }

    /// Columns spanning the directions the step must be orthogonal to: the
    /// slice normal `g` and the translations `h ↦ h + (ξ_i·x)_i`.
    fn constraints(&self) -> DMatrix<f64> {
        let m = self.g.len();
        DMatrix::from_fn(m, self.dim + 1, |i, c| {
            if c == 0 {
                self.g[i]
            } else {
                self.normals[i][c - 1]
            }
        })
    }

    fn newton_direction(&self, it: &Iterate, c: &DMatrix<f64>) -> Option<DVector<f64>> {
        let m = self.g.len();
        let n = self.dim as f64;
        let a = DVector::from_column_slice(&it.k.areas);
        // Hessian of V^{1/n} up to the positive factor V^{1/n-1}/n
        let hess = it.k.area_jacobian() - &a * a.transpose() * ((n - 1.0) / (n * it.k.volume));
        let q = c.ncols();
        let mut kkt = DMatrix::zeros(m + q, m + q);
        kkt.view_mut((0, 0), (m, m)).copy_from(&hess);
        kkt.view_mut((0, m), (m, q)).copy_from(c);
        kkt.view_mut((m, 0), (q, m)).copy_from(&c.transpose());
        let mut rhs = DVector::zeros(m + q);
        rhs.rows_mut(0, m).copy_from(&(-&a));
        let sol = kkt.lu().solve(&rhs)?;
        let d = sol.rows(0, m).into_owned();
        (d.iter().all(|x| x.is_finite()) && d.dot(&a) > 0.0).then_some(d)
    }

    fn gradient_direction(&self, it: &Iterate, c: &DMatrix<f64>) -> Option<DVector<f64>> {
        let a = DVector::from_column_slice(&it.k.areas);
        let gram = c.transpose() * c;
        let coef = gram.lu().solve(&(c.transpose() * &a))?;
        let d = &a - c * coef;
        let norm = d.norm();
        (norm > 0.0).then(|| d / norm)
    }

    fn try_step(&self, it: &Iterate, d: &DVector<f64>, t0: f64, halvings: usize) -> Option<Iterate> {
        let mut t = t0;
        for _ in 0..=halvings {
            let h: Vec<f64> = it.h.iter().zip(d.iter()).map(|(h, d)| h + t * d).collect();
            if let Some(next) = self.eval(h) {
                let kept = next.k.areas.iter().zip(&it.k.areas).all(|(a, b)| *a >= FRACTION_TO_BOUNDARY * b);
                if kept && next.phi >= it.phi * (1.0 - 1e-14) {
                    return Some(next);
                }
            }
            t *= 0.5;
        }
        None
    }

    /// Moves the origin to the vertex mean and renormalizes onto the slice.
    fn recenter(&self, it: Iterate) -> Option<Iterate> {
        let c = it.k.vertex_mean();
        let mut h: Vec<f64> = it
            .h
            .iter()
            .zip(&self.normals)
            .map(|(h, u)| h - u.dot(&c))
            .collect();
        let s: f64 = self.g.iter().zip(&h).map(|(g, h)| g * h).sum();
        for x in &mut h {
            *x /= s;
        }
        self.eval(h).or(Some(it))
    }
}

/// Reconstructs the polytope whose surface area measure is `m`, centered at
/// its centroid.
pub fn solve_minkowski(m: &DirectionalMeasure, cfg: &SolverConfig) -> Result<Polytope> {
    solve_minkowski_with_diagnostics(m, cfg).map(|(p, _)| p)
}

pub fn solve_minkowski_with_diagnostics(
    m: &DirectionalMeasure,
    cfg: &SolverConfig,
) -> Result<(Polytope, SolverDiagnostics)> {
    cfg.check()?;
    let dim = m.dim();
    if dim != 2 && dim != 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    m.ensure_alexandrov()?;
    let total_mass = m.total_mass();
    let atoms: Vec<_> = m
        .atoms()
        .iter()
        .filter(|a| a.weight >= 1e-12 * total_mass)
        .collect();
    let mass: f64 = atoms.iter().map(|a| a.weight).sum();
    let prob = Problem {
        dim,
        normals: atoms.iter().map(|a| a.dir.clone()).collect(),
        g: atoms.iter().map(|a| a.weight / mass).collect(),
    };
    let c = prob.constraints();

    let mut it = prob
        .eval(vec![1.0; atoms.len()])
        .ok_or_else(|| Error::DegenerateInput("unit offsets do not give a polytope".into()))?;
    let mut iters = 0;
    let mut err = prob.error(&it);
    while !prob.converged(&it, cfg.area_tol) && iters < cfg.max_iter {
        iters += 1;
        let newton = prob
            .newton_direction(&it, &c)
            .and_then(|d| prob.try_step(&it, &d, 1.0, cfg.max_halvings));
        let next = match newton {
            Some(next) => next,
            None => {
                let Some(d) = prob.gradient_direction(&it, &c) else {
                    break;
                };
                let hmin = it.h.iter().copied().fold(f64::INFINITY, f64::min);
                match prob.try_step(&it, &d, 0.25 * hmin, 60) {
                    Some(next) => next,
                    None => break,
                }
            }
        };
        it = prob.recenter(next).expect("recenter keeps a valid iterate");
        err = prob.error(&it);
    }
    let diag = SolverDiagnostics {
        iters,
        max_rel_area_err: err,
    };
    if !prob.converged(&it, cfg.area_tol) {
        let total: f64 = it.k.areas.iter().sum();
        let worst = (0..atoms.len())
            .max_by(|&i, &j| {
                let ei = (it.k.areas[i] / total - prob.g[i]).abs() / prob.g[i];
                let ej = (it.k.areas[j] / total - prob.g[j]).abs() / prob.g[j];
                ei.total_cmp(&ej)
            })
            .unwrap_or(0);
        if it.k.areas[worst] < cfg.area_tol * total {
            return Err(Error::FacetVanished {
                index: worst,
                area: it.k.areas[worst] * mass / total,
                weight: atoms[worst].weight,
            });
        }
        return Err(Error::NoConvergence {
            iters,
            max_rel_area_err: err,
        });
    }

    // scale so the areas carry the absolute weights
    let area: f64 = it.k.areas.iter().sum();
    let s = (mass / area).powf(1.0 / (dim as f64 - 1.0));
    let planes = prob
        .normals
        .iter()
        .zip(&it.h)
        .map(|(u, h)| (u.clone(), h * s))
        .collect();
    let verts = it.k.vertices.iter().map(|v| v * s).collect();
    let poly = Polytope::assemble(dim, verts, planes)?;
    if poly.facets().len() != atoms.len() {
        return Err(Error::FacetVanished {
            index: 0,
            area: 0.0,
            weight: atoms
                .iter()
                .map(|a| a.weight)
                .fold(f64::INFINITY, f64::min),
        });
    }
    Ok((poly.centered(), diag))
}
