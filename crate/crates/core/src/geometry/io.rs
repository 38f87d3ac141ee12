//! JSON forms of polytopes and measures.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::measure::{Atom, DirectionalMeasure};
use super::polytope::{convex_hull, Polytope};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AtomJson {
    pub dir: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MeasureJson {
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
}

impl From<&Polytope> for PolytopeJson {
    fn from(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p.vertices().iter().map(|v| v.iter().copied().collect()).collect(),
        }
    }
}

impl TryFrom<&PolytopeJson> for Polytope {
    type Error = Error;

    fn try_from(j: &PolytopeJson) -> Result<Self> {
        if let Some(v) = j.vertices.iter().find(|v| v.len() != j.dim) {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                got: v.len(),
            });
        }
        let pts: Vec<_> = j.vertices.iter().map(|v| DVector::from_column_slice(v)).collect();
        convex_hull(&pts)
    }
}

impl From<&DirectionalMeasure> for MeasureJson {
    fn from(m: &DirectionalMeasure) -> Self {
        Self {
            dim: m.dim(),
            atoms: m
                .atoms()
                .iter()
                .map(|a| AtomJson {
                    dir: a.dir.iter().copied().collect(),
                    weight: a.weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<&MeasureJson> for DirectionalMeasure {
    type Error = Error;

    fn try_from(j: &MeasureJson) -> Result<Self> {
        let atoms = j
            .atoms
            .iter()
            .map(|a| Atom {
                dir: DVector::from_column_slice(&a.dir),
                weight: a.weight,
            })
            .collect();
        DirectionalMeasure::new(j.dim, atoms)
    }
}
