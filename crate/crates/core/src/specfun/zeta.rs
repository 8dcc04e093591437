use std::f64::consts::PI;

use super::gamma::gamma_real;
use crate::error::{domain, Result};

// B_2, B_4, ..., B_24
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const EM_TERMS: usize = 20;

/// Euler–Maclaurin evaluation, valid for s >= 0, s != 1.
fn zeta_em(s: f64) -> f64 {
    let n = EM_TERMS as f64;
    let mut sum = 0.0;
    for k in (1..EM_TERMS).rev() {
        sum += (k as f64).powf(-s);
    }
    let n_s = n.powf(-s);
    sum += n * n_s / (s - 1.0) + 0.5 * n_s;
    // B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_s / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * npow;
        sum += term;
        let k = 2 * j as u32 + 2;
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= (k + 1) as f64 * (k + 2) as f64;
        npow /= n * n;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// ζ(s) for any real s != 1.
pub(crate) fn zeta_any(s: f64) -> f64 {
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s >= 0.0 {
        zeta_em(s)
    } else {
        if s == s.floor() && (s as i64) % 2 == 0 {
            return 0.0;
        }
        2f64.powf(s) * PI.powf(s - 1.0) * (0.5 * PI * s).sin() * gamma_real(1.0 - s) * zeta_em(1.0 - s)
    }
}

/// Riemann zeta function ζ(s) for s > 1.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("zeta requires s > 1, got {s}"));
    }
    Ok(zeta_em(s))
}
