//! Natural cubic spline interpolation.

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    /// Natural spline through `(x, y)`; `x` must be strictly increasing.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return domain("spline needs at least 3 knots and matching lengths");
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) || y.iter().any(|v| !v.is_finite()) {
            return domain("spline knots must be strictly increasing with finite values");
        }
        // Tridiagonal solve for the interior second derivatives.
        let mut m = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            let rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
            c[i] = h1 / diag;
            d[i] = (rhs - h0 * d[i - 1]) / diag;
        }
        for i in (1..n - 1).rev() {
            m[i] = d[i] - c[i] * m[i + 1];
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value at `t`, extrapolating linearly outside the knots.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let (x, y, m) = (&self.x, &self.y, &self.m);
        if t <= x[0] {
            return y[0] + self.slope(0) * (t - x[0]);
        }
        if t >= x[n - 1] {
            return y[n - 1] + self.slope(n - 2) * (t - x[n - 1]);
        }
        let i = x.partition_point(|&v| v <= t).min(n - 1) - 1;
        let h = x[i + 1] - x[i];
        let a = (x[i + 1] - t) / h;
        let b = (t - x[i]) / h;
        a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0
    }

    fn slope(&self, i: usize) -> f64 {
        let h = self.x[i + 1] - self.x[i];
        let base = (self.y[i + 1] - self.y[i]) / h;
        if i == 0 {
            base - h * (2.0 * self.m[0] + self.m[1]) / 6.0
        } else {
            base + h * (self.m[i] + 2.0 * self.m[i + 1]) / 6.0
        }
    }
}
