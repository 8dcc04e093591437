//! Series summation with an explicit tail bound.

use super::Tolerance;
use crate::error::{Error, Result};

/// Sum `term(k)` from `k = start` until `tail(k, term(k))` bounds the remainder
/// below `max(abs_tol, rel_tol·|S|)`.
///
/// `tail(k, t_k)` must bound `|Σ_{j>k} term(j)|`.
pub fn sum_series<T, B>(term: T, start: usize, tail: B, tol: &Tolerance) -> Result<f64>
where
    T: Fn(usize) -> f64,
    B: Fn(usize, f64) -> f64,
{
    tol.validate()?;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut bound = f64::INFINITY;
    for k in start..start + tol.max_iter {
        let t = term(k);
        // Kahan summation.
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        bound = tail(k, t);
        if !sum.is_finite() {
            break;
        }
        if bound.abs() <= tol.target(sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "sum_series",
        iterations: tol.max_iter,
        residual: bound,
    })
}
