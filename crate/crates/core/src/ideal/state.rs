//! Thermodynamic state of an ideal gas in a DOS-x trap.

use crate::error::{domain, Error, Result};
use crate::numerics::{find_root, integrate_1d, Tolerance};
use crate::specfun::{gamma_fn, zeta, BoseFunction};
use crate::trap::Statistics;

/// Thermodynamic state in reduced units.
///
/// For bosons `t = T/T_c`; for fermions `t = T/T_F`. `log_fugacity` is βμ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasState {
    pub t: f64,
    pub log_fugacity: f64,
    pub f: f64,
    pub n_atoms: f64,
    pub x: f64,
    pub statistics: Statistics,
}

impl GasState {
    /// Ideal Bose gas: z < 1 and f = 0 above T_c, z = 1 and f = 1 - t^{x+1} below.
    pub fn ideal_bose(t: f64, x: f64, n_atoms: f64) -> Result<Self> {
        if !(t > 0.0) {
            return domain(format!("reduced temperature must be positive, got {t}"));
        }
        let (log_fugacity, f) = if t > 1.0 {
            (log_fugacity(t, x)?, 0.0)
        } else {
            if !(x > 0.0) {
                return domain(format!("no condensate for DOS exponent x = {x}"));
            }
            (0.0, condensate_fraction(t, x))
        };
        Ok(GasState {
            t,
            log_fugacity,
            f,
            n_atoms,
            x,
            statistics: Statistics::Bose,
        })
    }

    /// Ideal Fermi gas at `t = T/T_F`.
    pub fn ideal_fermi(t: f64, x: f64, n_atoms: f64) -> Result<Self> {
        Ok(GasState {
            t,
            log_fugacity: fermi_log_fugacity(t, x)?,
            f: 0.0,
            n_atoms,
            x,
            statistics: Statistics::Fermi,
        })
    }

    pub fn fugacity(&self) -> f64 {
        self.log_fugacity.exp()
    }

    pub fn thermal_fraction(&self) -> f64 {
        1.0 - self.f
    }

    pub fn is_condensed(&self) -> bool {
        self.f > 0.0
    }
}

/// f = max(0, 1 - t^{1+x}).
pub fn condensate_fraction(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    (1.0 - t.powf(1.0 + x)).max(0.0)
}

/// ln z solving g_{1+x}(z) = ζ(1+x)/t^{1+x} above T_c.
pub fn log_fugacity(t: f64, x: f64) -> Result<f64> {
    if !(t > 1.0) {
        return domain(format!("fugacity is pinned at 1 for t <= 1 (got t = {t})"));
    }
    if !(x > 0.0) {
        return domain(format!("fugacity needs a condensing trap, x > 0 (got {x})"));
    }
    let g = BoseFunction::new(1.0 + x);
    let target = zeta(1.0 + x)? / t.powf(1.0 + x);
    let residual = |mu: f64| g.eval_mu(mu).map(|v| v - target).unwrap_or(f64::NAN);
    // Li_s(z) >= z, so ln z <= ln(target).
    let mut lo = target.ln().min(0.0) - 1.0;
    while residual(lo) > 0.0 {
        lo -= 2.0;
    }
    let tol = Tolerance::new(1e-300, 1e-15, 400)?;
    find_root(residual, lo, 0.0, &tol)
}

/// Fugacity z for t > 1; see [`log_fugacity`].
pub fn fugacity(t: f64, x: f64) -> Result<f64> {
    log_fugacity(t, x).map(f64::exp)
}

/// Normalized Fermi-Dirac integral (1/Γ(j+1)) ∫₀^∞ ε^j/(e^{ε-η}+1) dε = -Li_{j+1}(-e^η).
pub fn fermi_dirac_integral(j: f64, eta: f64) -> Result<f64> {
    if !(j > -1.0) {
        return domain(format!("Fermi-Dirac integral needs j > -1, got {j}"));
    }
    if eta < -2.0 {
        // Alternating series Σ (-1)^{l+1} e^{lη}/l^{j+1}.
        let z = eta.exp();
        let mut sum = 0.0;
        let mut zl = 1.0;
        for l in 1..200 {
            zl *= -z;
            let t = -zl / (l as f64).powf(j + 1.0);
            sum += t;
            if t.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    let tol = Tolerance::new(1e-300, 1e-13, 500)?;
    let h = |e: f64| {
        let w = e - eta;
        if w > 0.0 {
            let q = (-w).exp();
            e.powf(j) * q / (1.0 + q)
        } else {
            e.powf(j) / (1.0 + w.exp())
        }
    };
    let edge = eta.max(0.0);
    let mut total = 0.0;
    if edge > 0.0 {
        total += integrate_1d(h, 0.0, edge, &tol)?;
    }
    total += integrate_1d(h, edge, edge + 60.0, &tol)?;
    Ok(total / gamma_fn(j + 1.0)?)
}

/// βμ of an ideal Fermi gas at t = T/T_F: F_x(η) = 1/(Γ(x+2) t^{x+1}).
pub fn fermi_log_fugacity(t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("reduced temperature must be positive, got {t}"));
    }
    if !(x > 0.0) {
        return domain(format!("DOS exponent must be positive, got {x}"));
    }
    let target = 1.0 / (gamma_fn(x + 2.0)? * t.powf(x + 1.0));
    let residual = |eta: f64| {
        fermi_dirac_integral(x, eta)
            .map(|v| v / target - 1.0)
            .unwrap_or(f64::NAN)
    };
    let lo = target.ln() - 2.0;
    let mut hi = 1.0 / t + 1.0;
    let mut guard = 0;
    while residual(hi) < 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::NoBracket {
                lo,
                hi,
                f_lo: residual(lo),
                f_hi: residual(hi),
            });
        }
    }
    find_root(residual, lo, hi, &Tolerance::new(1e-15, 1e-14, 400)?)
}

/// Occupation 1/(z^{-1} e^{(p²+r²)/t} ∓ 1) of a harmonic trap in reduced units.
pub fn occupation(t: f64, z: f64, r: f64, p: f64) -> Result<f64> {
    occupation_with(Statistics::Bose, t, z, r * r + p * p)
}

/// Occupation at reduced energy `e` (units of k_B T_c) and temperature `t`.
pub fn occupation_with(statistics: Statistics, t: f64, z: f64, e: f64) -> Result<f64> {
    if !(t > 0.0) {
        return domain("temperature must be positive");
    }
    if !(z >= 0.0) || (statistics == Statistics::Bose && z > 1.0) {
        return domain(format!("fugacity out of range: {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let w = e / t - z.ln();
    match statistics {
        Statistics::Bose => {
            if w <= 0.0 {
                return Err(Error::DivergentOccupation);
            }
            Ok(1.0 / w.exp_m1())
        }
        Statistics::Fermi => Ok(1.0 / (w.exp() + 1.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn li3_direct(z: f64) -> f64 {
        (1..5000).rev().map(|l| z.powi(l) / (l as f64).powi(3)).sum()
    }

    #[test]
    fn fugacity_at_double_tc() {
        let z = fugacity(2.0, 2.0).unwrap();
        let target = 1.202_056_903_159_594_3 / 8.0;
        // Bisection against the directly summed series.
        let (mut lo, mut hi) = (0.0, 0.9);
        for _ in 0..60 {
            let m = 0.5 * (lo + hi);
            if li3_direct(m) < target {
                lo = m
            } else {
                hi = m
            }
        }
        assert!((z - 0.5 * (lo + hi)).abs() < 1e-12);
        assert!((z - 0.147_414).abs() < 1e-6);
    }

    #[test]
    fn fugacity_limits() {
        assert!(fugacity(1.0 + 1e-9, 2.0).unwrap() > 0.9999);
        let t: f64 = 50.0;
        let z = fugacity(t, 2.0).unwrap();
        let boltzmann = 1.202_056_903_159_594_3 / t.powi(3);
        assert!((z / boltzmann - 1.0).abs() < 1e-4);
        assert!(fugacity(1.0, 2.0).is_err());
        assert!(fugacity(2.0, 0.0).is_err());
    }

    #[test]
    fn condensate_fraction_examples() {
        assert_eq!(condensate_fraction(0.0, 2.0), 1.0);
        assert_eq!(condensate_fraction(1.0, 2.0), 0.0);
        assert_eq!(condensate_fraction(0.5, 2.0), 0.875);
        assert_eq!(condensate_fraction(1.5, 2.0), 0.0);
    }

    #[test]
    fn occupation_examples() {
        let n = occupation(0.8, 1.0, 0.0, 0.5).unwrap();
        assert!((n - 1.0 / (0.3125f64.exp() - 1.0)).abs() < 1e-14);
        assert!((n - 2.725_999_379).abs() < 1e-8);
        let n_small = occupation(1.0, 1.0, 0.0, 1e-3).unwrap();
        assert!((n_small * 1e-6 - 1.0).abs() < 1e-3);
        let z = 1e-6;
        let n = occupation(1.3, z, 0.4, 0.7).unwrap();
        assert!((n / (z * (-(0.16 + 0.49) / 1.3f64).exp()) - 1.0).abs() < 1e-5);
        assert_eq!(occupation(1.0, 1.0, 0.0, 0.0), Err(Error::DivergentOccupation));
    }

    #[test]
    fn fermi_dirac_against_closed_forms() {
        // F_0(η) = ln(1 + e^η)
        for &eta in &[-5.0, -1.0, 0.0, 3.0, 20.0] {
            let v = fermi_dirac_integral(0.0, eta).unwrap();
            assert!((v - eta.exp().ln_1p()).abs() < 1e-11 * v, "eta={eta}");
        }
        // F_j(0) = (1 - 2^{-j}) ζ(j+1)
        let v = fermi_dirac_integral(2.0, 0.0).unwrap();
        assert!((v - 0.75 * 1.202_056_903_159_594_3).abs() < 1e-11);
    }

    #[test]
    fn fermi_degenerate_limit() {
        // η → 1/t as t → 0 for any x.
        let eta = fermi_log_fugacity(0.01, 2.0).unwrap();
        assert!((eta * 0.01 - 1.0).abs() < 1e-3);
        let eta = fermi_log_fugacity(5.0, 2.0).unwrap();
        assert!(eta < 0.0);
    }

    proptest! {
        #[test]
        fn fugacity_solves_number_equation(t in 1.001f64..10.0, x in 0.3f64..3.0) {
            let mu = log_fugacity(t, x).unwrap();
            let lhs = BoseFunction::new(1.0 + x).eval_mu(mu).unwrap();
            let rhs = zeta(1.0 + x).unwrap() / t.powf(1.0 + x);
            prop_assert!((lhs / rhs - 1.0).abs() < 1e-12);
            prop_assert!(mu < 0.0);
        }

        #[test]
        fn fugacity_decreases_with_t(t in 1.01f64..5.0, dt in 0.01f64..2.0) {
            prop_assert!(fugacity(t + dt, 2.0).unwrap() < fugacity(t, 2.0).unwrap());
        }
    }
}
