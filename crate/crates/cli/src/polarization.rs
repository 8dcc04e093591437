//! σ₋ predictions from a σ₊ enhancement curve.

use std::path::Path;

use bosescat_core::polarization::{fit_gamma, sigma_minus_enhancement, GammaFit, GammaSample};

use crate::error::{config, CliResult};
use crate::fit::Curve;
use crate::output::{column_index, fmt_f64, preamble, reader, Table};

pub const COLUMNS: &[&str] = &["x", "eta_sigma_plus", "eta_sigma_minus"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaChoice {
    Fixed(f64),
    Fit,
}

impl std::str::FromStr for GammaChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "fit" {
            return Ok(GammaChoice::Fit);
        }
        s.parse::<f64>()
            .map(GammaChoice::Fixed)
            .map_err(|_| format!("expected a number or `fit`, got `{s}`"))
    }
}

/// Data file with columns eta, observed, sigma.
pub fn read_samples(path: &Path) -> CliResult<Vec<GammaSample>> {
    let mut rdr = reader(path)?;
    let headers = rdr.headers()?.clone();
    let cols = [
        column_index(&headers, "eta", path)?,
        column_index(&headers, "observed", path)?,
        column_index(&headers, "sigma", path)?,
    ];
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let mut v = [0.0; 3];
        for (slot, &c) in v.iter_mut().zip(&cols) {
            let s = rec.get(c).unwrap_or("");
            *slot = s
                .parse()
                .map_err(|_| crate::error::CliError::Config(format!("{}: cannot parse `{s}`", path.display())))?;
        }
        if !(v[2] > 0.0) {
            return config(format!("{}: sigma must be positive", path.display()));
        }
        out.push(GammaSample {
            eta: v[0],
            observed: v[1],
            weight: 1.0 / (v[2] * v[2]),
        });
    }
    Ok(out)
}

pub fn report(
    curve: &Curve,
    gamma: GammaChoice,
    samples: Option<&[GammaSample]>,
) -> CliResult<(Table, Option<GammaFit>)> {
    let (g, fit) = match gamma {
        GammaChoice::Fixed(g) => (g, None),
        GammaChoice::Fit => {
            let Some(samples) = samples else {
                return config("--gamma fit needs --data");
            };
            let f = fit_gamma(samples)?;
            (f.gamma, Some(f))
        }
    };
    let mut comments = preamble("polarization", &[]);
    comments.push(format!("gamma = {}", fmt_f64(g)));
    if let Some(f) = &fit {
        comments.push(format!("gamma_stderr = {}", fmt_f64(f.stderr)));
        comments.push(format!("chi2 = {}, dof = {}", fmt_f64(f.chi2), f.dof));
    }
    let mut t = Table::new(comments, COLUMNS);
    for (x, eta) in curve.x.iter().zip(&curve.y) {
        t.rows.push(vec![
            fmt_f64(*x),
            fmt_f64(*eta),
            fmt_f64(sigma_minus_enhancement(*eta, g)?),
        ]);
    }
    Ok((t, fit))
}
