//! Parametrizations `K ↦ µ(K)` by boundary measures and the sums they induce:
//! `µ(K +_µ L) = µ(K) + µ(L)` and `µ(t·_µ K) = t µ(K)`.
//!
//! Three structures are computable exactly: surface area (volume) on
//! polytopes, the first Dirichlet eigenvalue on axis boxes, and torsional
//! rigidity on rectangles.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::bodies::{Body, Box, Rect};
use crate::error::{Error, Result};
use crate::functionals::torsion::side_energy;
use crate::functionals::{lambda1_box_face_energies, torsion_side_energies, Functional};
use crate::geometry::{Atom, DirectionalMeasure, MERGE_ANGLE};
use crate::inequalities::DeficitReport;
use crate::reconstruction::{blaschke_scale, solve_minkowski, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuStructure {
    Volume,
    Lambda1Box,
    TorsionRect,
}

fn axis(dim: usize, i: usize, sign: f64) -> DVector<f64> {
    let mut e = DVector::zeros(dim);
    e[i] = sign;
    e
}

/// Symmetric axis measure with weight `w_i` at `±e_i`.
fn axis_measure(weights: &[f64]) -> Result<DirectionalMeasure> {
    let n = weights.len();
    let atoms = (0..n)
        .flat_map(|i| {
            [1.0, -1.0].map(|s| Atom {
                dir: axis(n, i, s),
                weight: weights[i],
            })
        })
        .collect();
    DirectionalMeasure::new(n, atoms)
}

/// Inverse of `axis_measure`.
fn axis_weights(m: &DirectionalMeasure) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut w = vec![[f64::NAN; 2]; n];
    for a in m.atoms() {
        let (i, &x) = a
            .dir
            .iter()
            .enumerate()
            .max_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
            .expect("nonempty direction");
        let off = (1.0 - x * x).max(0.0).sqrt();
        if off > MERGE_ANGLE {
            return Err(Error::UnsupportedSupport);
        }
        let slot = &mut w[i][usize::from(x < 0.0)];
        if !slot.is_nan() {
            return Err(Error::UnsupportedSupport);
        }
        *slot = a.weight;
    }
    let total = m.total_mass();
    w.iter()
        .map(|[p, q]| {
            if p.is_nan() || q.is_nan() {
                Err(Error::NotAlexandrov("some ±e_i carries no mass".into()))
            } else if (p - q).abs() > 1e-9 * total {
                Err(Error::NotAlexandrov(format!("unbalanced axis weights {p} and {q}")))
            } else {
                Ok(0.5 * (p + q))
            }
        })
        .collect()
}

/// Rectangle whose torsion side energies are `(w_x, w_y)`.
///
/// The ratio `w_x/w_y` depends only on the aspect `ρ = a/b` and decreases
/// from `∞` to `0`; it is inverted by safeguarded Newton in `log ρ`, then
/// the size follows from the cubic homogeneity of the energies.
pub fn torsion_rect_from_energies(wx: f64, wy: f64) -> Result<Rect> {
    if !(wx > 0.0 && wy > 0.0 && wx.is_finite() && wy.is_finite()) {
        return Err(Error::InvalidArgument(format!("energies must be positive, got ({wx}, {wy})")));
    }
    let target = (wx / wy).ln();
    // w_x = E(b, a), w_y = E(a, b) with b = 1, a = e^s
    let f = |s: f64| {
        let rho = s.exp();
        side_energy(1.0, rho).ln() - side_energy(rho, 1.0).ln() - target
    };
    let (mut lo, mut hi) = (-1.0, 1.0);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    let mut widen = 0;
    while flo * fhi > 0.0 {
        widen += 1;
        if widen > 60 {
            return Err(Error::NoConvergence {
                iters: widen,
                max_rel_area_err: flo.abs().min(fhi.abs()),
            });
        }
        if fhi > 0.0 {
            lo = hi;
            flo = fhi;
            hi += 2f64.powi(widen.min(5) as i32);
            fhi = f(hi);
        } else {
            hi = lo;
            fhi = flo;
            lo -= 2f64.powi(widen.min(5) as i32);
            flo = f(lo);
        }
    }
    let mut s = 0.5 * (lo + hi);
    let mut fs = f(s);
    let mut iters = 0;
    while fs.abs() > 1e-14 && hi - lo > 1e-15 * (1.0 + s.abs()) {
        iters += 1;
        if iters > 200 {
            return Err(Error::NoConvergence {
                iters,
                max_rel_area_err: fs.abs(),
            });
        }
        let h = 1e-6;
        let slope = (f(s + h) - f(s - h)) / (2.0 * h);
        let mut next = s - fs / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        s = next;
        fs = f(s);
        // f decreases in s
        if fs > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
    }
    let rho = s.exp();
    let t = (wy / side_energy(rho, 1.0)).cbrt();
    let r = Rect::new(rho * t, t)?;
    let (gx, gy) = torsion_side_energies(&r);
    let err = ((gx - wx) / wx).abs().max(((gy - wy) / wy).abs());
    if err > 1e-10 {
        return Err(Error::NoConvergence {
            iters,
            max_rel_area_err: err,
        });
    }
    Ok(r)
}

impl MuStructure {
    pub const ALL: [MuStructure; 3] = [
        MuStructure::Volume,
        MuStructure::Lambda1Box,
        MuStructure::TorsionRect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MuStructure::Volume => "volume",
            MuStructure::Lambda1Box => "lambda1_box",
            MuStructure::TorsionRect => "torsion_rect",
        }
    }

    pub fn functional(self) -> Functional {
        match self {
            MuStructure::Volume => Functional::Volume,
            MuStructure::Lambda1Box => Functional::Lambda1,
            MuStructure::TorsionRect => Functional::Torsion,
        }
    }

    pub fn alpha(self, dim: usize) -> f64 {
        self.functional().alpha(dim)
    }

    /// `1 - 1/α`, the concavity exponent.
    pub fn exponent(self, dim: usize) -> f64 {
        1.0 - 1.0 / self.alpha(dim)
    }

    fn check_domain(self, body: &Body) -> Result<()> {
        let ok = matches!(
            (self, body),
            (MuStructure::Volume, Body::Polytope(_) | Body::Box(_))
                | (MuStructure::Lambda1Box, Body::Box(_))
                | (MuStructure::TorsionRect, Body::Rect(_))
        );
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{} on {}", self.name(), body.kind())))
        }
    }

    pub fn value(self, body: &Body) -> Result<f64> {
        self.check_domain(body)?;
        self.functional().value(body)
    }

    pub fn mu_measure(self, body: &Body) -> Result<DirectionalMeasure> {
        self.check_domain(body)?;
        match body {
            Body::Polytope(p) => Ok(p.surface_area_measure()),
            Body::Box(b) if self == MuStructure::Volume => axis_measure(&b.face_areas()),
            Body::Box(b) => axis_measure(&lambda1_box_face_energies(b)),
            Body::Rect(r) => {
                let (wx, wy) = torsion_side_energies(r);
                axis_measure(&[wx, wy])
            }
            _ => unreachable!("domain checked"),
        }
    }

    /// The body, up to translation, whose µ-measure is `m`.
    pub fn reconstruct(self, m: &DirectionalMeasure, cfg: &SolverConfig) -> Result<Body> {
        match self {
            MuStructure::Volume => solve_minkowski(m, cfg).map(Body::Polytope),
            MuStructure::Lambda1Box => {
                m.ensure_alexandrov()?;
                let w = axis_weights(m)?;
                let two_pi2 = 2.0 * std::f64::consts::PI.powi(2);
                Box::new(w.iter().map(|x| (two_pi2 / x).cbrt()).collect()).map(Body::Box)
            }
            MuStructure::TorsionRect => {
                if m.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        got: m.dim(),
                    });
                }
                m.ensure_alexandrov()?;
                let w = axis_weights(m)?;
                torsion_rect_from_energies(w[0], w[1]).map(Body::Rect)
            }
        }
    }

    pub fn mu_sum(self, k: &Body, l: &Body, cfg: &SolverConfig) -> Result<Body> {
        if k.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: k.dim(),
                got: l.dim(),
            });
        }
        let m = self.mu_measure(k)?.add(&self.mu_measure(l)?)?;
        self.reconstruct(&m, cfg)
    }

    /// `t ·_µ K = t^{1/(α-1)} K`.
    pub fn mu_scale(self, t: f64, k: &Body) -> Result<Body> {
        self.check_domain(k)?;
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {t}")));
        }
        let s = t.powf(1.0 / (self.alpha(k.dim()) - 1.0));
        Ok(match k {
            Body::Polytope(p) => Body::Polytope(blaschke_scale(t, p)?),
            Body::Box(b) if self == MuStructure::Volume => Body::Polytope(blaschke_scale(t, &b.to_polytope())?),
            Body::Box(b) => Body::Box(b.dilate(s)),
            Body::Rect(r) => Body::Rect(r.dilate(s)),
            _ => unreachable!("domain checked"),
        })
    }

    /// `F^{1-1/α}(K +_µ L) - F^{1-1/α}(K) - F^{1-1/α}(L)`.
    pub fn concavity_deficit(self, k: &Body, l: &Body, cfg: &SolverConfig) -> Result<DeficitReport> {
        let start = Instant::now();
        let sum = self.mu_sum(k, l, cfg)?;
        let p = self.exponent(k.dim());
        let lhs = self.value(&sum)?.powf(p);
        let rhs = self.value(k)?.powf(p) + self.value(l)?.powf(p);
        Ok(DeficitReport::new("mu-concavity", self.name(), k, l, sum, p, lhs, rhs)
            .with_wall_time(start.elapsed()))
    }

    /// With `µ(K) ≤ µ(L)` atom by atom, whether `F(K) ≤ F(L)`.
    pub fn monotonicity_check(self, k: &Body, l: &Body) -> Result<bool> {
        let (mk, ml) = (self.mu_measure(k)?, self.mu_measure(l)?);
        if mk.len() != ml.len() {
            return Err(Error::NotComparable);
        }
        for a in mk.atoms() {
            let j = ml.find(&a.dir).ok_or(Error::NotComparable)?;
            if a.weight > ml.atoms()[j].weight * (1.0 + 1e-12) {
                return Err(Error::NotComparable);
            }
        }
        let (fk, fl) = (self.value(k)?, self.value(l)?);
        Ok(fk <= fl + 1e-12 * fl.abs())
    }
}

impl fmt::Display for MuStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MuStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        MuStructure::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown structure `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn boxed(s: &[f64]) -> Body {
        Body::Box(Box::new(s.to_vec()).unwrap())
    }

    #[test]
    fn lambda1_cube_atoms() {
        let m = MuStructure::Lambda1Box.mu_measure(&boxed(&[1.0; 3])).unwrap();
        assert_eq!(m.len(), 6);
        for a in m.atoms() {
            assert!((a.weight - 2.0 * PI * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda1_sums() {
        let cfg = SolverConfig::default();
        let s = MuStructure::Lambda1Box;
        let c = boxed(&[1.0; 3]);
        let Body::Box(b) = s.mu_sum(&c, &c, &cfg).unwrap() else { panic!() };
        for x in &b.sides {
            assert!((x - 2f64.powf(-1.0 / 3.0)).abs() < 1e-14);
        }
        let Body::Box(b) = s.mu_sum(&c, &boxed(&[2.0, 1.0, 1.0]), &cfg).unwrap() else { panic!() };
        let expect = [(8.0f64 / 9.0).cbrt(), 2f64.powf(-1.0 / 3.0), 2f64.powf(-1.0 / 3.0)];
        for (x, e) in b.sides.iter().zip(expect) {
            assert!((x - e).abs() < 1e-14);
        }
        let r = s.concavity_deficit(&c, &boxed(&[2.0, 1.0, 1.0]), &cfg).unwrap();
        assert!(r.deficit > 0.0);
        assert!((r.exponent - 1.5).abs() < 1e-15);
    }

    #[test]
    fn torsion_round_trip() {
        for (a, b) in [(1.0, 1.0), (0.01, 1.0), (3.0, 0.2), (1e-3, 2.0)] {
            let r = Rect::new(a, b).unwrap();
            let m = MuStructure::TorsionRect.mu_measure(&Body::Rect(r)).unwrap();
            let Body::Rect(q) = MuStructure::TorsionRect.reconstruct(&m, &SolverConfig::default()).unwrap()
            else {
                panic!()
            };
            assert!((q.a - a).abs() < 1e-9 * a && (q.b - b).abs() < 1e-9 * b, "{a},{b} -> {q:?}");
        }
    }

    #[test]
    fn homogeneity() {
        let cases = [
            (MuStructure::Lambda1Box, boxed(&[1.0, 0.5, 2.0])),
            (MuStructure::TorsionRect, Body::Rect(Rect::new(0.3, 1.0).unwrap())),
            (MuStructure::Volume, boxed(&[1.0, 0.5, 2.0])),
        ];
        for (s, k) in cases {
            let m = s.mu_measure(&k).unwrap();
            let a = s.alpha(k.dim());
            for t in [0.5, 2.0, 3.0] {
                let kt = match &k {
                    Body::Box(b) => Body::Box(b.dilate(t)),
                    Body::Rect(r) => Body::Rect(r.dilate(t)),
                    _ => unreachable!(),
                };
                let mt = s.mu_measure(&kt).unwrap();
                for (x, y) in m.atoms().iter().zip(mt.atoms()) {
                    let want = x.weight * t.powf(a - 1.0);
                    assert!((y.weight - want).abs() < 1e-10 * want, "{s} t={t}");
                }
            }
        }
    }

    #[test]
    fn monotone_and_incomparable() {
        let s = MuStructure::Lambda1Box;
        assert!(s.monotonicity_check(&boxed(&[2.0, 3.0, 2.0]), &boxed(&[1.0, 1.0, 1.5])).unwrap());
        assert_eq!(
            s.monotonicity_check(&boxed(&[2.0, 0.5, 2.0]), &boxed(&[1.0, 1.0, 1.0])),
            Err(Error::NotComparable)
        );
        assert!(s.monotonicity_check(&boxed(&[1.0; 3]), &boxed(&[1.0; 3])).unwrap());
    }

    #[test]
    fn domain_is_enforced() {
        let r = Body::Rect(Rect::new(1.0, 2.0).unwrap());
        assert!(matches!(MuStructure::Lambda1Box.mu_measure(&r), Err(Error::DomainMismatch(_))));
        let m = DirectionalMeasure::from_pairs(
            2,
            &[
                (vec![1.0, 1.0], 1.0),
                (vec![-1.0, -1.0], 1.0),
                (vec![1.0, -1.0], 1.0),
                (vec![-1.0, 1.0], 1.0),
            ],
        )
        .unwrap();
        assert_eq!(
            MuStructure::TorsionRect.reconstruct(&m, &SolverConfig::default()),
            Err(Error::UnsupportedSupport)
        );
    }
}
