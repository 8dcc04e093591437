use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::numerics::{sum_series, Tolerance};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Gamma function for any real argument that is not a non-positive integer.
pub(crate) fn gamma_real(s: f64) -> f64 {
    if s < 0.5 {
        PI / ((PI * s).sin() * gamma_real(1.0 - s))
    } else {
        let x = s - 1.0;
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x)
    }
}

/// Γ(s) for s > 0.
pub fn gamma_fn(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return domain(format!("gamma_fn requires s > 0, got {s}"));
    }
    Ok(gamma_real(s))
}

/// ln Γ(s) for s > 0.
pub fn ln_gamma(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return domain(format!("ln_gamma requires s > 0, got {s}"));
    }
    if s < 0.5 {
        return Ok((PI / (PI * s).sin()).ln() - ln_gamma(1.0 - s)?);
    }
    let x = s - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln())
}

fn series_tol() -> Tolerance {
    Tolerance::new(1e-300, 1e-16, 10_000).expect("static tolerance")
}

/// E1(x) = Γ(0, x) for 0 < x <= 1 by its power series.
fn e1_series(x: f64) -> Result<f64> {
    // Σ (-1)^{k+1} x^k / (k·k!)
    let s = sum_series(
        |k| {
            let mut t = 1.0;
            for j in 1..=k {
                t *= x / j as f64;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * t / k as f64
        },
        1,
        |k, tk| tk.abs() * x / (k as f64 + 1.0),
        &series_tol(),
    )?;
    Ok(-super::EULER_GAMMA - x.ln() + s)
}

/// Lower incomplete gamma γ(s, x) by its power series.
fn gamma_lower_series(s: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut n = 0usize;
    loop {
        n += 1;
        term *= x / (s + n as f64);
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
        if n > 10_000 {
            return Err(crate::Error::NonConvergence {
                what: "gamma_lower_series",
                iterations: n,
                residual: term,
            });
        }
    }
    Ok(sum * (s * x.ln() - x).exp())
}

/// Γ(s, x) by the modified Lentz continued fraction.
fn gamma_upper_cf(s: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok((s * x.ln() - x).exp() * h);
        }
    }
    Err(crate::Error::NonConvergence {
        what: "gamma_upper",
        iterations: 10_000,
        residual: h,
    })
}

/// Upper incomplete gamma Γ(s, x) = ∫_x^∞ t^{s-1} e^{-t} dt for s >= 0, x > 0.
pub fn gamma_upper(s: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("gamma_upper requires x > 0, got {x}"));
    }
    if !(s >= 0.0) {
        return domain(format!("gamma_upper requires s >= 0, got {s}"));
    }
    if s == 0.0 {
        return if x <= 1.0 { e1_series(x) } else { gamma_upper_cf(0.0, x) };
    }
    if x < s + 1.0 {
        Ok(gamma_real(s) - gamma_lower_series(s, x)?)
    } else {
        gamma_upper_cf(s, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn special_values() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-14);
        // Γ(5/2) = (3/2)(1/2)Γ(1/2)
        assert!(rel(gamma_fn(2.5).unwrap(), 0.75 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(2.5).unwrap(), 1.329_340_388_179_137) < 1e-13);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.0).is_err());
    }

    #[test]
    fn reflection_for_negative_arguments() {
        // Γ(-1/2) = -2√π
        assert!(rel(gamma_real(-0.5), -2.0 * PI.sqrt()) < 1e-13);
    }

    #[test]
    fn ln_gamma_matches() {
        for &s in &[0.1, 0.5, 1.7, 10.0, 50.5] {
            assert!(
                (ln_gamma(s).unwrap() - gamma_fn(s).unwrap().ln()).abs()
                    < 1e-12 * (1.0 + gamma_fn(s).unwrap().ln().abs())
            );
        }
    }

    #[test]
    fn upper_gamma_values() {
        for &x in &[0.1, 1.0, 3.0, 20.0] {
            assert!(rel(gamma_upper(1.0, x).unwrap(), (-x).exp()) < 1e-12);
        }
        assert!(rel(gamma_upper(0.0, 1.0).unwrap(), 0.219_383_934_395_520_3) < 1e-12);
        // E1 on both sides of the branch switch against an independent quadrature.
        for &x in &[0.5, 1.0, 1.0000001, 2.0, 7.0] {
            let q = crate::numerics::integrate_1d(
                |t| (-t).exp() / t,
                x,
                f64::INFINITY,
                &Tolerance::default().with_rel(1e-13).with_abs(1e-16),
            )
            .unwrap();
            assert!(rel(gamma_upper(0.0, x).unwrap(), q) < 1e-10, "x={x}");
        }
        // Γ(1/2, x) = √π erfc(√x); erfc(1) = 0.157299207050285...
        assert!(rel(gamma_upper(0.5, 1.0).unwrap(), PI.sqrt() * 0.157_299_207_050_285_13) < 1e-12);
        assert!(gamma_upper(0.0, 0.0).is_err());
    }

    #[test]
    fn upper_gamma_small_x_expansion() {
        for &x in &[1e-3, 1e-2, 5e-2] {
            let lhs = gamma_upper(0.0, x).unwrap() + x.ln() + super::super::EULER_GAMMA;
            let rhs = x - x * x / 4.0;
            assert!((lhs - rhs).abs() < x.powi(3));
        }
    }

    proptest! {
        #[test]
        fn recurrence(s in 0.05f64..30.0) {
            let a = gamma_fn(s + 1.0).unwrap();
            let b = s * gamma_fn(s).unwrap();
            prop_assert!(rel(a, b) < 1e-13);
        }

        #[test]
        fn upper_gamma_recurrence(s in 0.1f64..6.0, x in 0.05f64..20.0) {
            // Γ(s+1, x) = sΓ(s, x) + x^s e^{-x}
            let a = gamma_upper(s + 1.0, x).unwrap();
            let b = s * gamma_upper(s, x).unwrap() + (s * x.ln() - x).exp();
            prop_assert!(rel(a, b) < 1e-10);
        }
    }
}
