//! Adaptive Gauss-Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::Tolerance;
use crate::error::{domain, Error, Result};

// 21-point Kronrod abscissae; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Value, error estimate and evaluation count of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadResult> {
    let first = gk21(f, a, b);
    let mut evaluations = 21;
    let mut value = first.value;
    let mut error = first.error;
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::NonConvergence {
            what: "integrate_1d",
            iterations: 0,
            residual: f64::NAN,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // Segments too narrow to bisect in floating point.
    let mut frozen_error = 0.0;
    let mut frozen_value = 0.0;
    let mut iterations = 0;
    while error > tol.target(value) {
        if iterations >= tol.max_iter {
            return Err(Error::NonConvergence {
                what: "integrate_1d",
                iterations,
                residual: error,
            });
        }
        let Some(seg) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (seg.a + seg.b);
        let width = (seg.b - seg.a).abs();
        if width <= 100.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) || mid == seg.a || mid == seg.b {
            frozen_error += seg.error;
            frozen_value += seg.value;
            continue;
        }
        let left = gk21(f, seg.a, mid);
        let right = gk21(f, mid, seg.b);
        evaluations += 42;
        iterations += 1;
        value += left.value + right.value - seg.value;
        error += left.error + right.error - seg.error;
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NonConvergence {
                what: "integrate_1d",
                iterations,
                residual: f64::NAN,
            });
        }
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed accumulated cancellation from the running updates.
    let mut total = frozen_value;
    let mut total_err = frozen_error;
    for s in heap.iter() {
        total += s.value;
        total_err += s.error;
    }
    if total_err > tol.target(total) {
        return Err(Error::NonConvergence {
            what: "integrate_1d",
            iterations,
            residual: total_err,
        });
    }
    Ok(QuadResult {
        value: total,
        error: total_err,
        evaluations,
    })
}

/// Integrate `f` over `[a, b]`; `b` may be `f64::INFINITY`.
///
/// The semi-infinite case is mapped onto `[0, 1)` with `x = a + u/(1-u)`.
pub fn integrate_1d_with_error<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadResult> {
    tol.validate()?;
    if a.is_nan() || b.is_nan() || a.is_infinite() {
        return domain(format!("invalid integration limits [{a}, {b}]"));
    }
    if b == f64::NEG_INFINITY {
        return domain("lower limit must be finite and upper limit greater than -inf");
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if b.is_infinite() {
        let g = |u: f64| {
            let w = 1.0 - u;
            let x = a + u / w;
            let y = f(x);
            if y == 0.0 {
                0.0
            } else {
                y / (w * w)
            }
        };
        return adaptive(&g, 0.0, 1.0, tol);
    }
    if a > b {
        let r = adaptive(&f, b, a, tol)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    adaptive(&f, a, b, tol)
}

/// Integrate `f` over `[a, b]` to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64> {
    integrate_1d_with_error(f, a, b, tol).map(|r| r.value)
}
