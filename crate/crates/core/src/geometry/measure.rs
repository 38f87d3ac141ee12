use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Atoms closer than this angle (radians) are the same direction.
pub const MERGE_ANGLE: f64 = 1e-8;

/// Relative tolerance of the Alexandrov test (barycenter and equator checks).
pub const ALEXANDROV_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub dir: DVector<f64>,
    pub weight: f64,
}

/// A finite atomic measure on the unit sphere `S^{n-1}`.
///
/// Construction normalizes directions and merges atoms closer than
/// [`MERGE_ANGLE`]; the atom order of the input is otherwise kept.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

fn angle_between(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    // chord-based formula stays accurate for tiny angles
    2.0 * (0.5 * (a - b).norm()).min(1.0).asin()
}

impl DirectionalMeasure {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if atom.dir.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: atom.dir.len(),
                });
            }
            if !(atom.weight.is_finite() && atom.weight > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "atom weight must be positive, got {}",
                    atom.weight
                )));
            }
            let norm = atom.dir.norm();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::InvalidArgument("atom direction is zero".into()));
            }
            let dir = atom.dir / norm;
            match out
                .iter_mut()
                .find(|a| angle_between(&a.dir, &dir) < MERGE_ANGLE)
            {
                Some(existing) => {
                    let merged = &existing.dir * existing.weight + &dir * atom.weight;
                    existing.weight += atom.weight;
                    existing.dir = merged.normalize();
                }
                None => out.push(Atom {
                    dir,
                    weight: atom.weight,
                }),
            }
        }
        Ok(Self { dim, atoms: out })
    }

    /// Builds a measure from `(direction, weight)` pairs given as slices.
    pub fn from_pairs(dim: usize, pairs: &[(Vec<f64>, f64)]) -> Result<Self> {
        let atoms = pairs
            .iter()
            .map(|(d, w)| Atom {
                dir: DVector::from_column_slice(d),
                weight: *w,
            })
            .collect();
        Self::new(dim, atoms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn barycenter(&self) -> DVector<f64> {
        self.atoms
            .iter()
            .fold(DVector::zeros(self.dim), |acc, a| acc + &a.dir * a.weight)
    }

    /// Smallest singular value of the matrix whose rows are `f_i ξ_i`.
    pub fn spread(&self) -> f64 {
        if self.atoms.len() < self.dim {
            return 0.0;
        }
        let m = DMatrix::from_fn(self.atoms.len(), self.dim, |i, j| {
            self.atoms[i].weight * self.atoms[i].dir[j]
        });
        m.singular_values().min()
    }

    /// Null barycenter and not concentrated on a great subsphere, both to
    /// [`ALEXANDROV_TOL`] relative to the total mass.
    pub fn is_alexandrov(&self) -> bool {
        self.alexandrov_violation().is_none()
    }

    pub(crate) fn alexandrov_violation(&self) -> Option<String> {
        let mass = self.total_mass();
        if self.atoms.len() < self.dim + 1 {
            return Some(format!(
                "{} atoms cannot balance in dimension {}",
                self.atoms.len(),
                self.dim
            ));
        }
        let b = self.barycenter().norm();
        if b > ALEXANDROV_TOL * mass {
            return Some(format!("barycenter norm {b:.3e} exceeds tolerance"));
        }
        let s = self.spread();
        if s <= ALEXANDROV_TOL * mass {
            return Some(format!("concentrated on an equator (spread {s:.3e})"));
        }
        None
    }

    pub fn ensure_alexandrov(&self) -> Result<()> {
        match self.alexandrov_violation() {
            Some(msg) => Err(Error::NotAlexandrov(msg)),
            None => Ok(()),
        }
    }

    /// Atomwise sum; coinciding directions merge.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let atoms = self.atoms.iter().chain(&other.atoms).cloned().collect();
        Self::new(self.dim, atoms)
    }

    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got {t}"
            )));
        }
        Ok(Self {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    dir: a.dir.clone(),
                    weight: a.weight * t,
                })
                .collect(),
        })
    }

    /// Replaces the weights, keeping directions and order.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.atoms.len() {
            return Err(Error::InvalidArgument("weight count mismatch".into()));
        }
        let atoms = self
            .atoms
            .iter()
            .zip(weights)
            .map(|(a, &w)| Atom {
                dir: a.dir.clone(),
                weight: w,
            })
            .collect();
        Self::new(self.dim, atoms)
    }

    /// Index of the atom within [`MERGE_ANGLE`] of `dir`, if any.
    pub fn find(&self, dir: &DVector<f64>) -> Option<usize> {
        let d = dir.normalize();
        self.atoms
            .iter()
            .position(|a| angle_between(&a.dir, &d) < MERGE_ANGLE)
    }

    /// Weight at `dir`, zero when there is no atom there.
    pub fn weight_at(&self, dir: &DVector<f64>) -> f64 {
        self.find(dir).map_or(0.0, |i| self.atoms[i].weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis_measure(w: [f64; 3]) -> DirectionalMeasure {
        let mut pairs = Vec::new();
        for (k, &wk) in w.iter().enumerate() {
            let mut e = vec![0.0; 3];
            e[k] = 1.0;
            pairs.push((e.clone(), wk));
            e[k] = -1.0;
            pairs.push((e, wk));
        }
        DirectionalMeasure::from_pairs(3, &pairs).unwrap()
    }

    #[test]
    fn merges_close_directions() {
        let m = DirectionalMeasure::from_pairs(
            2,
            &[(vec![1.0, 0.0], 1.0), (vec![1.0, 1e-10], 2.0), (vec![0.0, 1.0], 1.0)],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.atoms()[0].weight - 3.0).abs() < 1e-15);
        assert!((m.atoms()[0].dir.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alexandrov_checks() {
        assert!(axis_measure([1.0, 2.0, 3.0]).is_alexandrov());
        // unbalanced
        let m = DirectionalMeasure::from_pairs(
            3,
            &[
                (vec![1.0, 0.0, 0.0], 1.0),
                (vec![-1.0, 0.0, 0.0], 2.0),
                (vec![0.0, 1.0, 0.0], 1.0),
                (vec![0.0, -1.0, 0.0], 1.0),
                (vec![0.0, 0.0, 1.0], 1.0),
                (vec![0.0, 0.0, -1.0], 1.0),
            ],
        )
        .unwrap();
        assert!(!m.is_alexandrov());
        // balanced but on an equator
        let flat = DirectionalMeasure::from_pairs(
            3,
            &[
                (vec![1.0, 0.0, 0.0], 1.0),
                (vec![-1.0, 0.0, 0.0], 1.0),
                (vec![0.0, 1.0, 0.0], 1.0),
                (vec![0.0, -1.0, 0.0], 1.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            flat.ensure_alexandrov(),
            Err(Error::NotAlexandrov(_))
        ));
    }

    #[test]
    fn addition_merges_shared_directions() {
        let a = axis_measure([1.0, 1.0, 1.0]);
        let b = axis_measure([2.0, 3.0, 4.0]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.len(), 6);
        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert!((s.weight_at(&e1) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(DirectionalMeasure::from_pairs(2, &[(vec![1.0, 0.0], -1.0)]).is_err());
        assert!(DirectionalMeasure::from_pairs(2, &[(vec![0.0, 0.0], 1.0)]).is_err());
        assert!(DirectionalMeasure::from_pairs(2, &[(vec![1.0, 0.0, 0.0], 1.0)]).is_err());
    }
}
