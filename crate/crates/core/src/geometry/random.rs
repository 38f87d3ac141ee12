//! Seeded random bodies for property sweeps.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::polytope::{convex_hull, Polytope};
use crate::error::{Error, Result};

pub type SweepRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` of the generator seeded by `seed`; sweeps give
/// every sample its own stream so results do not depend on scheduling.
pub fn sample_rng(seed: u64, index: u64) -> SweepRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point on `S^{n-1}`.
pub fn random_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Hull of `count` uniform points on the unit sphere.
pub fn random_polytope_with<R: Rng + ?Sized>(
    dim: usize,
    count: usize,
    rng: &mut R,
) -> Result<Polytope> {
    if count <= dim {
        return Err(Error::InvalidArgument(format!(
            "need more than {dim} points, got {count}"
        )));
    }
    // a degenerate draw has probability zero; retry a few times anyway
    for _ in 0..8 {
        let pts: Vec<_> = (0..count).map(|_| random_direction(dim, rng)).collect();
        if let Ok(p) = convex_hull(&pts) {
            return Ok(p);
        }
    }
    Err(Error::DegenerateInput("repeated degenerate random draws".into()))
}

/// Hull of `N` uniform points on the unit sphere with `N` uniform in
/// `[n+2, 30]`.
pub fn random_polytope<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Polytope> {
    let count = rng.random_range(dim + 2..=30);
    random_polytope_with(dim, count, rng)
}

/// Random rotation (Gram-Schmidt on Gaussian columns, determinant fixed to 1).
pub fn random_rotation<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> nalgebra::DMatrix<f64> {
    let g = nalgebra::DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    if q.determinant() < 0.0 {
        let col = -q.column(0);
        q.set_column(0, &col);
    }
    q
}

impl Polytope {
    /// Image under a linear map; the map must be invertible.
    pub fn linear_image(&self, m: &nalgebra::DMatrix<f64>) -> Result<Polytope> {
        let pts: Vec<_> = self.vertices().iter().map(|v| m * v).collect();
        convex_hull(&pts)
    }
}
