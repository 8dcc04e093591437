//! Pair-occupation integrals behind the finite-κ structure factor.
//!
//! All energies here are in units of k_B T. `inner(c, κ)` is
//! ∫dy n(c+y²) n(c+(y+κ)²) and `pair_integral` adds the radial-energy
//! average ∫da a^{x-1/2} inner(a-η, κ).

use crate::error::{domain, Result};
use crate::numerics::{integrate_1d, Tolerance};
use crate::trap::Statistics;

/// Energy window above the chemical potential kept in every Bose/Fermi factor.
pub const ENERGY_CUTOFF: f64 = 40.0;

#[inline]
fn occ(stats: Statistics, e: f64) -> f64 {
    match stats {
        Statistics::Bose => 1.0 / e.exp_m1(),
        Statistics::Fermi => {
            if e > 0.0 {
                let q = (-e).exp();
                q / (1.0 + q)
            } else {
                1.0 / (1.0 + e.exp())
            }
        }
    }
}

/// Quadrature settings for the nested integral.
#[derive(Debug, Clone, Copy)]
pub struct KernelTolerance {
    pub inner: Tolerance,
    pub outer: Tolerance,
}

impl Default for KernelTolerance {
    fn default() -> Self {
        KernelTolerance {
            inner: Tolerance {
                abs_tol: 1e-300,
                rel_tol: 1e-11,
                max_iter: 400,
            },
            outer: Tolerance {
                abs_tol: 1e-300,
                rel_tol: 1e-9,
                max_iter: 400,
            },
        }
    }
}

impl KernelTolerance {
    /// Same structure with the outer relative tolerance set to `rel`.
    pub fn with_rel(rel: f64) -> Self {
        let mut k = Self::default();
        k.outer.rel_tol = rel;
        k.inner.rel_tol = (rel * 1e-2).max(1e-13);
        k
    }
}

/// ∫dy n(c+y²) n(c+(y+κ)²) over the real line.
///
/// The integrand is symmetric about y = -κ/2, so only y >= -κ/2 is integrated.
/// A sinh map resolves the peak at y = 0 of width √c.
pub fn inner(stats: Statistics, c: f64, kappa: f64, tol: &Tolerance) -> Result<f64> {
    if stats == Statistics::Bose && !(c > 0.0) {
        return domain(format!("Bose pair kernel needs c > 0, got {c}"));
    }
    let width = match stats {
        Statistics::Bose => c.sqrt().min(1.0),
        Statistics::Fermi => 1.0,
    };
    let y_max = (ENERGY_CUTOFF + (-c).max(0.0)).sqrt();
    let h = |y: f64| occ(stats, c + y * y) * occ(stats, c + (y + kappa) * (y + kappa));
    let right = integrate_1d(
        |u: f64| {
            let y = width * u.sinh();
            h(y) * width * u.cosh()
        },
        0.0,
        (y_max / width).asinh(),
        tol,
    )?;
    let left = if kappa > 0.0 {
        integrate_1d(
            |u: f64| {
                let y = -width * u.sinh();
                h(y) * width * u.cosh()
            },
            0.0,
            (0.5 * kappa / width).asinh(),
            tol,
        )?
    } else {
        0.0
    };
    Ok(2.0 * (left + right))
}

/// ∫₀^{A} da a^{x-1/2} inner(a - η, κ) with A = 40 + max(η, 0).
///
/// Below a_s = min(κ², A) the substitution a = v^{1/x} removes the a^{x-1}
/// singularity present at η = 0; above it a = e^s.
pub fn pair_integral(stats: Statistics, x: f64, eta: f64, kappa: f64, tol: &KernelTolerance) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("DOS exponent must be positive, got {x}"));
    }
    if stats == Statistics::Bose && eta > 0.0 {
        return domain(format!("Bose gas needs eta <= 0, got {eta}"));
    }
    if stats == Statistics::Bose && eta == 0.0 && kappa == 0.0 && x <= 1.0 {
        return Err(crate::Error::DivergentValue(
            "pair integral at z = 1, kappa = 0 diverges for x <= 1".into(),
        ));
    }
    let a_max = ENERGY_CUTOFF + eta.max(0.0);
    let split = if kappa > 0.0 {
        (kappa * kappa).min(a_max)
    } else {
        1.0f64.min(a_max)
    };
    let inner_at = |a: f64| inner(stats, a - eta, kappa, &tol.inner);
    // Errors raised inside closures are carried out through this cell.
    let failure = std::cell::Cell::new(None);
    let eval = |a: f64| match inner_at(a) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let low = integrate_1d(
        |v: f64| {
            let a = v.powf(1.0 / x);
            if a <= 0.0 {
                return 0.0;
            }
            a.sqrt() * eval(a) / x
        },
        0.0,
        split.powf(x),
        &tol.outer,
    );
    let high = if split < a_max {
        integrate_1d(
            |s: f64| {
                let a = s.exp();
                a.powf(x + 0.5) * eval(a)
            },
            split.ln(),
            a_max.ln(),
            &tol.outer,
        )
    } else {
        Ok(0.0)
    };
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(low? + high?)
}

/// Homogeneous-gas correlation integral Φ(c) = (1/√π) ∫₀^40 da inner(c + a, κ).
///
/// For a uniform Bose gas at fugacity e^{-c}, S - 1 = Φ(c)/g_{3/2}(e^{-c}).
pub fn homogeneous_correlation(c: f64, kappa: f64, tol: &KernelTolerance) -> Result<f64> {
    pair_integral(Statistics::Bose, 0.5, -c, kappa, tol).map(|v| v / std::f64::consts::PI.sqrt())
}
