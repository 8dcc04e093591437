//! Scale-only fits of a model curve to measured data.

use std::path::Path;

use crate::error::{config, CliError, CliResult};
use crate::output::{column_index, reader};

/// Model curve y(x), sorted by x.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Curve {
    pub fn new(mut points: Vec<(f64, f64)>) -> CliResult<Self> {
        points.retain(|(x, y)| x.is_finite() && y.is_finite());
        if points.len() < 2 {
            return config("model curve needs at least 2 valid points");
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[1].0 == w[0].0) {
            return config("model curve has repeated abscissae");
        }
        let (x, y) = points.into_iter().unzip();
        Ok(Curve { x, y })
    }

    /// Linear interpolation; `Range` outside the tabulated span.
    pub fn eval(&self, t: f64) -> CliResult<f64> {
        let (lo, hi) = (self.x[0], self.x[self.x.len() - 1]);
        if !(t >= lo && t <= hi) {
            return Err(CliError::Range(format!("t = {t} outside model range [{lo}, {hi}]")));
        }
        let i = self.x.partition_point(|&v| v <= t).clamp(1, self.x.len() - 1);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let u = (t - x0) / (x1 - x0);
        Ok(self.y[i - 1] + u * (self.y[i] - self.y[i - 1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataPoint {
    pub t: f64,
    pub signal: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFit {
    pub scale: f64,
    pub chi2: f64,
    pub dof: usize,
}

/// Scale minimizing Σ((scale·S(t_i) - signal_i)/σ_i)².
pub fn fit_scale(curve: &Curve, data: &[DataPoint]) -> CliResult<ScaleFit> {
    if data.len() < 2 {
        return config("fit needs at least 2 data points");
    }
    let mut model = Vec::with_capacity(data.len());
    for d in data {
        if !(d.sigma > 0.0) {
            return config(format!("sigma must be positive, got {} at t = {}", d.sigma, d.t));
        }
        model.push(curve.eval(d.t)?);
    }
    let (mut smm, mut smy) = (0.0, 0.0);
    for (d, m) in data.iter().zip(&model) {
        let w = 1.0 / (d.sigma * d.sigma);
        smm += w * m * m;
        smy += w * m * d.signal;
    }
    if !(smm > 0.0) {
        return Err(CliError::Numerical(
            "degenerate fit: the model vanishes at every data point".into(),
        ));
    }
    let scale = smy / smm;
    let chi2 = data
        .iter()
        .zip(&model)
        .map(|(d, m)| ((scale * m - d.signal) / d.sigma).powi(2))
        .sum();
    Ok(ScaleFit {
        scale,
        chi2,
        dof: data.len() - 1,
    })
}

/// Read (x, y) from two named columns of a sweep table, skipping failed rows.
pub fn read_curve(path: &Path, x_col: &str, y_col: &str) -> CliResult<Curve> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    let ix = column_index(&headers, x_col, path)?;
    let iy = column_index(&headers, y_col, path)?;
    let ie = headers.iter().position(|h| h == "error");
    let mut pts = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if let Some(e) = ie {
            if !rec.get(e).unwrap_or("").is_empty() {
                continue;
            }
        }
        pts.push((parse_field(&rec, ix, path)?, parse_field(&rec, iy, path)?));
    }
    Curve::new(pts)
}

fn parse_field(rec: &csv::StringRecord, i: usize, path: &Path) -> CliResult<f64> {
    let s = rec.get(i).unwrap_or("");
    s.parse()
        .map_err(|_| CliError::Config(format!("{}: cannot parse `{s}` as a number", path.display())))
}

/// Data file with columns t, signal, sigma.
pub fn read_data(path: &Path) -> CliResult<Vec<DataPoint>> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    let (it, is, ie) = (
        column_index(&headers, "t", path)?,
        column_index(&headers, "signal", path)?,
        column_index(&headers, "sigma", path)?,
    );
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        out.push(DataPoint {
            t: parse_field(&rec, it, path)?,
            signal: parse_field(&rec, is, path)?,
            sigma: parse_field(&rec, ie, path)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Curve {
        Curve::new(vec![(0.0, 1.0), (1.0, 3.0), (2.0, 4.0)]).unwrap()
    }

    #[test]
    fn interpolation_and_range() {
        let c = line();
        assert_eq!(c.eval(0.5).unwrap(), 2.0);
        assert_eq!(c.eval(2.0).unwrap(), 4.0);
        assert!(matches!(c.eval(2.5), Err(CliError::Range(_))));
    }

    #[test]
    fn exact_scale() {
        let c = line();
        let data: Vec<_> = [0.2, 0.7, 1.3, 1.9]
            .iter()
            .map(|&t| DataPoint {
                t,
                signal: 2.5 * c.eval(t).unwrap(),
                sigma: 0.1,
            })
            .collect();
        let fit = fit_scale(&c, &data).unwrap();
        assert!((fit.scale - 2.5).abs() < 1e-14);
        assert!(fit.chi2 < 1e-20);
        assert_eq!(fit.dof, 3);
    }
}
