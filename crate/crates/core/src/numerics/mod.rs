//! Quadrature, root finding, fixed-point iteration and series summation.

mod fixed_point;
mod quad;
mod roots;
mod series;
mod spline;

pub use fixed_point::fixed_point;
pub use quad::{integrate_1d, integrate_1d_with_error, QuadResult};
pub use roots::find_root;
pub use series::sum_series;
pub use spline::CubicSpline;

use crate::error::{domain, Result};

/// Accuracy targets and iteration budget for the iterative routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_iter: 200,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        let t = Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_iter < 1 {
            return domain(format!(
                "tolerance requires abs_tol > 0, rel_tol > 0, max_iter >= 1 (got {:e}, {:e}, {})",
                self.abs_tol, self.rel_tol, self.max_iter
            ));
        }
        Ok(())
    }

    pub fn with_abs(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_rel(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    /// Error target for a quantity of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
