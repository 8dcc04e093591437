//! `classify` and `selftest` subcommands.

use std::f64::consts::PI;

use bosescat_core::ideal::{
    enhancement_closed_form_k0, naive_psd_enhancement, phase_space_oracle, structure_factor, GasState, OracleGrid,
};
use bosescat_core::polarization::sigma_minus_enhancement;
use bosescat_core::specfun::{polylog, zeta};
use bosescat_core::trap::{classify_regime, dos_exponent, EnhancementClass, RecoilSpec, TrapPower};
use rayon::prelude::*;

use crate::error::{config, CliResult};
use crate::output::{fmt_f64, preamble, Table};

pub fn parse_power(s: &str) -> CliResult<TrapPower> {
    if s == "box" || s == "inf" {
        return Ok(TrapPower::Box);
    }
    match s.parse::<f64>() {
        Ok(a) if a > 0.0 && a.is_finite() => Ok(TrapPower::Finite(a)),
        _ => config(format!("--power: expected a positive number or `box`, got `{s}`")),
    }
}

pub fn classify(dimension: u32, power: TrapPower) -> CliResult<Table> {
    let x = dos_exponent(dimension, power).map_err(|e| crate::error::CliError::Config(e.to_string()))?;
    classify_x(x)
}

pub fn classify_x(x: f64) -> CliResult<Table> {
    let r = classify_regime(x);
    let (class, value) = match r.enhancement_class {
        EnhancementClass::Bounded => ("bounded", f64::NAN),
        EnhancementClass::DivergesAtTc { exponent } => ("diverges-at-tc", exponent),
        EnhancementClass::BoundedAboveTcByZetaRatio { value } => ("bounded-above-tc-by-zeta-ratio", value),
    };
    let mut t = Table::new(
        preamble("classify", &[]),
        &["x", "has_bec", "enhancement_class", "value"],
    );
    t.rows.push(vec![
        fmt_f64(x),
        r.has_bec.to_string(),
        class.to_string(),
        fmt_f64(value),
    ]);
    Ok(t)
}

/// One named check with its measured discrepancy.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> bosescat_core::Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn oracle_point(t: f64, kappa: f64) -> bosescat_core::Result<(bool, String)> {
    let state = GasState::ideal_bose(t, 2.0, 1e5)?;
    let recoil = RecoilSpec::bose(kappa)?;
    let a = structure_factor(&state, &recoil)?.s;
    let b = phase_space_oracle(&state, &recoil, OracleGrid::new(96))?;
    let rel = (a / b - 1.0).abs();
    Ok((
        rel < 0.01,
        format!("t = {t}, kappa = {kappa}: quadrature {a:.6}, phase-space {b:.6}, rel {rel:.2e}"),
    ))
}

/// The oracle-agreement suite.
pub fn selftest(threads: usize) -> CliResult<Vec<Check>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::error::CliError::Config(format!("--threads: {e}")))?;
    let oracle: Vec<Check> = pool.install(|| {
        [(1.2, 0.3), (1.5, 0.6), (2.0, 1.0)]
            .par_iter()
            .map(|&(t, k)| check("oracle agreement", || oracle_point(t, k)))
            .collect()
    });
    let mut out = vec![
        check("universal bound zeta(2)/zeta(3)", || {
            let v = enhancement_closed_form_k0(1.0, 2.0)?;
            let want = zeta(2.0)? / zeta(3.0)?;
            Ok(((v - want).abs() < 1e-9, format!("{v:.12} vs {want:.12}")))
        }),
        check("naive phase-space-density estimate", || {
            let v = naive_psd_enhancement(zeta(1.5)?);
            Ok(((v - 1.92).abs() < 0.005, format!("{v:.5}")))
        }),
        check("dilogarithm at one", || {
            let v = polylog(2.0, 1.0)?;
            Ok(((v - PI * PI / 6.0).abs() < 1e-13, format!("{v:.15}")))
        }),
        check("box divergence at kappa = 0.05", || {
            let kappa = 0.05;
            let s = structure_factor(&GasState::ideal_bose(1.0, 0.5, 1e5)?, &RecoilSpec::bose(kappa)?)?.s;
            let want = PI.powf(1.5) / (kappa * zeta(1.5)?);
            let rel = (s / want - 1.0).abs();
            Ok((rel < 0.05, format!("S = {s:.4}, asymptote {want:.4}, rel {rel:.3}")))
        }),
        check("sigma-minus enhancement (4 + eta)/5", || {
            let worst = [1.0, 1.5, 2.0, 3.0]
                .iter()
                .map(|&e| sigma_minus_enhancement(e, 1.0 / 3.0).map(|v| (v - (4.0 + e) / 5.0).abs()))
                .collect::<bosescat_core::Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((worst < 1e-12, format!("max deviation {worst:.1e}")))
        }),
    ];
    out.extend(oracle);
    Ok(out)
}
