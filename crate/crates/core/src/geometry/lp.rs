//! Interior points of halfspace systems via the Chebyshev-center LP.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};

/// Center and radius of the largest ball inside `{x : u_i·x ≤ h_i}`, with the
/// radius capped at `cap`. Normals must be unit vectors.
pub(crate) fn chebyshev_center(
    normals: &[Vec<f64>],
    offsets: &[f64],
    cap: f64,
) -> Result<(Vec<f64>, f64)> {
    let dim = normals.first().map_or(0, Vec::len);
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let x: Vec<_> = (0..dim)
        .map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    let r = lp.add_var(1.0, (0.0, cap));
    for (u, &h) in normals.iter().zip(offsets) {
        let mut terms: Vec<_> = x.iter().zip(u).map(|(&v, &c)| (v, c)).collect();
        terms.push((r, 1.0));
        lp.add_constraint(terms, ComparisonOp::Le, h);
    }
    let outcome = match lp.solve() {
        Ok(o) => o,
        Err(microlp::Error::Infeasible) => return Err(Error::Empty),
        Err(microlp::Error::Unbounded) => return Err(Error::Unbounded),
        Err(e) => return Err(Error::DegenerateInput(format!("interior-point LP failed: {e:?}"))),
    };
    let sol = outcome
        .into_solution()
        .map_err(|_| Error::DegenerateInput("interior-point LP interrupted".into()))?;
    let center = x.iter().map(|&v| sol.var_value(v)).collect();
    Ok((center, sol.var_value(r)))
}
