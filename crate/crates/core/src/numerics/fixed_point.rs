//! Damped fixed-point iteration.

use super::Tolerance;
use crate::error::{domain, Error, Result};

/// Iterate `x <- x + damping·(g(x) - x)` until `‖g(x) - x‖∞ <= abs_tol`.
pub fn fixed_point<G>(g: G, x0: &[f64], damping: f64, tol: &Tolerance) -> Result<Vec<f64>>
where
    G: Fn(&[f64]) -> Vec<f64>,
{
    tol.validate()?;
    if !(damping > 0.0 && damping <= 1.0) {
        return domain(format!("damping must lie in (0, 1], got {damping}"));
    }
    let mut x = x0.to_vec();
    let mut residual = f64::INFINITY;
    for _ in 0..=tol.max_iter {
        let gx = g(&x);
        if gx.len() != x.len() {
            return domain("fixed-point map changed the vector length");
        }
        residual = x.iter().zip(&gx).map(|(a, b)| (b - a).abs()).fold(0.0, |m, d| {
            if d.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(d)
            }
        });
        if residual.is_nan() {
            break;
        }
        if residual <= tol.abs_tol {
            return Ok(x);
        }
        for (xi, gi) in x.iter_mut().zip(&gx) {
            *xi += damping * (gi - *xi);
        }
    }
    Err(Error::NonConvergence {
        what: "fixed_point",
        iterations: tol.max_iter,
        residual,
    })
}
