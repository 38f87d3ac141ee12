use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported dimension {0} (only 2 and 3 are implemented)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("halfspace intersection is unbounded")]
    Unbounded,

    #[error("halfspace intersection is empty or lower dimensional")]
    Empty,

    #[error("measure is not an Alexandrov measure: {0}")]
    NotAlexandrov(String),

    #[error("no convergence after {iters} iterations (max relative area error {max_rel_area_err:.3e})")]
    NoConvergence { iters: usize, max_rel_area_err: f64 },

    #[error("facet {index} vanished (area {area:.3e}, weight {weight:.3e})")]
    FacetVanished { index: usize, area: f64, weight: f64 },

    #[error("measure is indecomposable: its support has exactly n+1 atoms")]
    Indecomposable,

    #[error("body does not belong to the domain of `{0}`")]
    DomainMismatch(String),

    #[error("measure support is not on the coordinate axes")]
    UnsupportedSupport,

    #[error("measures are not comparable atom by atom")]
    NotComparable,

    #[error("no violation found: {0}")]
    NoViolationFound(String),

    #[error("degenerate deficit {deficit:.3e} with asymmetry {asymmetry:.3e}")]
    DegenerateDeficit { deficit: f64, asymmetry: f64 },

    #[error("quadrature grid too coarse: refinement changed the value by {0:.3e}")]
    GridTooCoarse(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
