//! Analytic body families and their text descriptors.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::io::PolytopeJson;
use crate::geometry::{convex_hull, Polytope};

/// Axis-aligned box with the given side lengths, centered at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Box {
    pub sides: Vec<f64>,
}

impl Box {
    pub fn new(sides: Vec<f64>) -> Result<Self> {
        if sides.is_empty() || sides.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "box sides must be positive, got {sides:?}"
            )));
        }
        Ok(Self { sides })
    }

    pub fn cube(dim: usize, side: f64) -> Result<Self> {
        Self::new(vec![side; dim])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    /// Area of the facet with normal `±e_i`.
    pub fn face_areas(&self) -> Vec<f64> {
        let v = self.volume();
        self.sides.iter().map(|s| v / s).collect()
    }

    pub fn dilate(&self, t: f64) -> Self {
        Self {
            sides: self.sides.iter().map(|s| s * t).collect(),
        }
    }

    /// Box with the given facet areas: `x_i = (Π A_j)^{1/(n-1)} / A_i`.
    pub fn from_face_areas(areas: &[f64]) -> Result<Self> {
        let n = areas.len();
        if n < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        let log_prod: f64 = areas.iter().map(|a| a.ln()).sum();
        let root = (log_prod / (n as f64 - 1.0)).exp();
        Self::new(areas.iter().map(|a| root / a).collect())
    }

    pub fn to_polytope(&self) -> Polytope {
        let n = self.dim();
        let pts: Vec<_> = (0..1usize << n)
            .map(|mask| {
                DVector::from_fn(n, |i, _| {
                    let s = if mask >> i & 1 == 1 { 0.5 } else { -0.5 };
                    s * self.sides[i]
                })
            })
            .collect();
        convex_hull(&pts).expect("a box with positive sides is full dimensional")
    }
}

/// Rectangle `[0,a] × [0,b]`; `R_l` is `a = l`, `b = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub a: f64,
    pub b: f64,
}

impl Rect {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rectangle sides must be positive, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn canonical(l: f64) -> Result<Self> {
        Self::new(l, 1.0)
    }

    pub fn dilate(&self, t: f64) -> Self {
        Self {
            a: self.a * t,
            b: self.b * t,
        }
    }

    pub fn area(&self) -> f64 {
        self.a * self.b
    }
}

/// Prolate spheroid with semi-axes `a ≥ b > 0`, symmetric about the long axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spheroid {
    pub a: f64,
    pub b: f64,
}

impl Spheroid {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(b.is_finite() && a.is_finite() && b > 0.0 && a >= b) {
            return Err(Error::InvalidArgument(format!(
                "prolate spheroid needs a >= b > 0, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn dilate(&self, t: f64) -> Self {
        Self {
            a: self.a * t,
            b: self.b * t,
        }
    }
}

/// A body named by a CLI descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "BodyJson", try_from = "BodyJson")]
pub enum Body {
    Polytope(Polytope),
    Box(Box),
    Rect(Rect),
    Spheroid(Spheroid),
    /// Equilateral triangle with vertices `(0,0)`, `(1,0)`, `(1/2, √3/2)`.
    Triangle,
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Polytope(_) => "polytope",
            Body::Box(_) => "box",
            Body::Rect(_) => "rect",
            Body::Spheroid(_) => "spheroid",
            Body::Triangle => "triangle",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.dim(),
            Body::Box(b) => b.dim(),
            Body::Rect(_) | Body::Triangle => 2,
            Body::Spheroid(_) => 3,
        }
    }
}

/// Tagged JSON form: `{"type":"box","sides":[...]}`, `{"type":"rect","a":..,"b":..}`,
/// `{"type":"polytope","dim":3,"vertices":[...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BodyJson {
    Polytope(PolytopeJson),
    Box { sides: Vec<f64> },
    Rect { a: f64, b: f64 },
    Spheroid { a: f64, b: f64 },
    Triangle,
}

impl From<Body> for BodyJson {
    fn from(b: Body) -> Self {
        match b {
            Body::Polytope(p) => BodyJson::Polytope(PolytopeJson::from(&p)),
            Body::Box(x) => BodyJson::Box { sides: x.sides },
            Body::Rect(r) => BodyJson::Rect { a: r.a, b: r.b },
            Body::Spheroid(s) => BodyJson::Spheroid { a: s.a, b: s.b },
            Body::Triangle => BodyJson::Triangle,
        }
    }
}

impl TryFrom<BodyJson> for Body {
    type Error = Error;

    fn try_from(j: BodyJson) -> Result<Self> {
        Ok(match j {
            BodyJson::Polytope(p) => Body::Polytope(Polytope::try_from(&p)?),
            BodyJson::Box { sides } => Body::Box(Box::new(sides)?),
            BodyJson::Rect { a, b } => Body::Rect(Rect::new(a, b)?),
            BodyJson::Spheroid { a, b } => Body::Spheroid(Spheroid::new(a, b)?),
            BodyJson::Triangle => Body::Triangle,
        })
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Polytope(p) => write!(
                f,
                "polytope:{}v{}f",
                p.vertices().len(),
                p.facets().len()
            ),
            Body::Box(b) => write!(f, "box:{}", fmt_list(&b.sides)),
            Body::Rect(r) if r.b == 1.0 => write!(f, "rect:{}", r.a),
            Body::Rect(r) => write!(f, "rect:{},{}", r.a, r.b),
            Body::Spheroid(s) => write!(f, "spheroid:{},{}", s.a, s.b),
            Body::Triangle => write!(f, "triangle"),
        }
    }
}

impl FromStr for Body {
    type Err = Error;

    /// Parses `box:1,2,2`, `rect:0.01`, `rect:2,1`, `spheroid:10,1` and
    /// `triangle`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<f64>> {
            args.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad number `{t}` in `{s}`")))
                })
                .collect()
        };
        match kind.trim() {
            "box" => Ok(Body::Box(Box::new(nums()?)?)),
            "rect" => match nums()?.as_slice() {
                [l] => Ok(Body::Rect(Rect::canonical(*l)?)),
                [a, b] => Ok(Body::Rect(Rect::new(*a, *b)?)),
                _ => Err(Error::InvalidArgument(format!("rect takes 1 or 2 numbers: `{s}`"))),
            },
            "spheroid" => match nums()?.as_slice() {
                [a, b] => Ok(Body::Spheroid(Spheroid::new(*a, *b)?)),
                _ => Err(Error::InvalidArgument(format!("spheroid takes 2 numbers: `{s}`"))),
            },
            "triangle" if args.is_empty() => Ok(Body::Triangle),
            _ => Err(Error::InvalidArgument(format!("unknown body descriptor `{s}`"))),
        }
    }
}
