//! Functionals on descriptor bodies and their isoperimetric quotients.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::capacity::{capacity_prolate_spheroid, surface_area_prolate_spheroid, volume_prolate_spheroid};
use super::eigen::{
    boundary_energy_lambda1_box, boundary_energy_lambda1_rect, lambda1_box, lambda1_rect, lambda2_rect,
};
use super::torsion::{boundary_energy_torsion_rect, torsion_rect};
use super::triangle::{lambda1_triangle, lambda1_triangle_equilateral};
use crate::bodies::Body;
use crate::error::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Functional {
    Volume,
    MeanWidth,
    Lambda1,
    Lambda2,
    Torsion,
    Capacity,
}

impl Functional {
    pub const ALL: [Functional; 6] = [
        Functional::Volume,
        Functional::MeanWidth,
        Functional::Lambda1,
        Functional::Lambda2,
        Functional::Torsion,
        Functional::Capacity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Functional::Volume => "volume",
            Functional::MeanWidth => "mean-width",
            Functional::Lambda1 => "lambda1",
            Functional::Lambda2 => "lambda2",
            Functional::Torsion => "torsion",
            Functional::Capacity => "capacity",
        }
    }

    /// Homogeneity degree in dimension `n`.
    pub fn alpha(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            Functional::Volume => n,
            Functional::MeanWidth => 1.0,
            Functional::Lambda1 | Functional::Lambda2 => -2.0,
            Functional::Torsion => n + 2.0,
            Functional::Capacity => n - 2.0,
        }
    }

    fn mismatch(self, body: &Body) -> Error {
        Error::DomainMismatch(format!("{} on {}", self.name(), body.kind()))
    }

    pub fn value(self, body: &Body) -> Result<f64> {
        match (self, body) {
            (Functional::Volume, b) => body_volume(b),
            (Functional::MeanWidth, Body::Polytope(p)) => Ok(p.mean_width()),
            (Functional::MeanWidth, Body::Box(b)) => Ok(b.to_polytope().mean_width()),
            (Functional::Lambda1, Body::Box(b)) => Ok(lambda1_box(b)),
            (Functional::Lambda1, Body::Rect(r)) => Ok(lambda1_rect(r)),
            (Functional::Lambda1, Body::Triangle) => Ok(lambda1_triangle()),
            (Functional::Lambda2, Body::Rect(r)) => Ok(lambda2_rect(r)),
            (Functional::Torsion, Body::Rect(r)) => Ok(torsion_rect(r)),
            (Functional::Capacity, Body::Spheroid(s)) => Ok(capacity_prolate_spheroid(s)),
            (f, b) => Err(f.mismatch(b)),
        }
    }

    /// Total mass `∫dµ` of the associated boundary measure.
    pub fn boundary_mass(self, body: &Body) -> Result<f64> {
        match (self, body) {
            (Functional::Volume, b) => body_surface_area(b),
            (Functional::Lambda1, Body::Box(b)) => Ok(boundary_energy_lambda1_box(b)),
            (Functional::Lambda1, Body::Rect(r)) => Ok(boundary_energy_lambda1_rect(r)),
            (Functional::Lambda1, Body::Triangle) => Ok(lambda1_triangle_equilateral().boundary_energy),
            (Functional::Torsion, Body::Rect(r)) => Ok(boundary_energy_torsion_rect(r)),
            (f, b) => Err(f.mismatch(b)),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Functional::ALL
            .into_iter()
            .find(|f| f.name() == key || (key == "lambda_1" && *f == Functional::Lambda1))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown functional `{s}`")))
    }
}

pub fn body_volume(body: &Body) -> Result<f64> {
    Ok(match body {
        Body::Polytope(p) => p.volume(),
        Body::Box(b) => b.volume(),
        Body::Rect(r) => r.area(),
        Body::Spheroid(s) => volume_prolate_spheroid(s),
        Body::Triangle => SQRT3 / 4.0,
    })
}

/// `H^{n-1}(∂K)`: perimeter in the plane.
pub fn body_surface_area(body: &Body) -> Result<f64> {
    Ok(match body {
        Body::Polytope(p) => p.surface_area(),
        Body::Box(b) => 2.0 * b.face_areas().iter().sum::<f64>(),
        Body::Rect(r) => 2.0 * (r.a + r.b),
        Body::Spheroid(s) => surface_area_prolate_spheroid(s),
        Body::Triangle => 3.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub functional: Functional,
    pub body: String,
    pub exponent: f64,
    /// `F^{exponent}`.
    pub numerator: f64,
    pub denominator: f64,
    /// `"boundary-mass"` for `∫dµ`, `"surface-area"` for `S`.
    pub denominator_kind: String,
    pub value: f64,
}

/// `E(K) = F^{1-1/α}(K) / ∫dµ(K)`. Capacity in `R³` has `1 - 1/α = 0`, so it
/// uses the Blaschke form `Cap^{(n-1)/α} / S = Cap² / S` instead.
pub fn isoperimetric_quotient(functional: Functional, body: &Body) -> Result<QuotientReport> {
    let n = body.dim();
    let alpha = functional.alpha(n);
    let (exponent, denominator, kind) = match functional {
        Functional::Capacity => ((n as f64 - 1.0) / alpha, body_surface_area(body)?, "surface-area"),
        Functional::Volume => (1.0 - 1.0 / alpha, body_surface_area(body)?, "surface-area"),
        _ => (1.0 - 1.0 / alpha, functional.boundary_mass(body)?, "boundary-mass"),
    };
    let f = functional.value(body)?;
    let numerator = f.powf(exponent);
    Ok(QuotientReport {
        functional,
        body: body.to_string(),
        exponent,
        numerator,
        denominator,
        denominator_kind: kind.into(),
        value: numerator / denominator,
    })
}

/// `E` of the ball with the same dimension: `Vol^{(n-1)/n}/S` of the unit ball.
pub fn volume_quotient_ball(n: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        2 => PI.sqrt() / (2.0 * PI),
        _ => (4.0 * PI / 3.0).powf(2.0 / 3.0) / (4.0 * PI),
    }
}
