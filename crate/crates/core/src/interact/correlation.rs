//! First-order coherence of a uniform ideal Bose gas and the pair-correlation
//! suppression of S - 1 by a contact repulsion.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::spec::InteractionSpec;
use crate::constants::K_B;
use crate::error::{domain, Error, Result};
use crate::numerics::{integrate_1d, CubicSpline, Tolerance};
use crate::specfun::{gamma_upper, BoseFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeHint {
    /// Gaussian coherence, 1 - 8√2 a/λ.
    HighT,
    /// Exponential coherence, 1 - (8a/ξ)Γ(0, 2λ/ξ).
    NearCritical,
    /// Numerical integrals over the full series for g¹.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    /// Correlation length (m); infinite at μ = 0.
    pub xi: f64,
    pub suppression_high_t: f64,
    pub suppression_local: f64,
}

impl CorrelationResult {
    pub fn new(temperature: f64, mu: f64, spec: &InteractionSpec) -> Result<Self> {
        let xi = if mu == 0.0 {
            f64::INFINITY
        } else {
            correlation_length(temperature, mu, spec.mass)?
        };
        Ok(CorrelationResult {
            xi,
            suppression_high_t: structure_suppression(temperature, mu, spec, RegimeHint::HighT)?,
            suppression_local: structure_suppression(temperature, mu, spec, RegimeHint::Auto)?,
        })
    }
}

/// Unnormalized λ³G¹ in units ρ = r/λ: Σ_l e^{-lc} l^{-3/2} e^{-πρ²/l}.
///
/// Summed exactly while the terms vary quickly in l, then closed with an
/// Euler-Maclaurin tail.
fn coherence_sum(rho: f64, c: f64) -> Result<f64> {
    let b = PI * rho * rho;
    let term = |l: f64| (-l * c - b / l).exp() * l.powf(-1.5);
    let l0 = (20.0 * b.sqrt()).max(256.0).ceil();
    let mut s = 0.0;
    let mut comp = 0.0;
    let mut l = 1.0;
    while l < l0 {
        let y = term(l) - comp;
        let t = s + y;
        comp = (t - s) - y;
        s = t;
        l += 1.0;
    }
    let f0 = term(l0);
    let df0 = f0 * (-c + b / (l0 * l0) - 1.5 / l0);
    // Size of the tail from its peak in ln l, where l·term(l) is stationary.
    let l_peak = if c > 0.0 {
        (-0.5 + (0.25 + 4.0 * b * c).sqrt()) / (2.0 * c)
    } else {
        2.0 * b
    };
    let l_peak = l_peak.max(l0);
    let scale = s + l_peak * term(l_peak);
    let tol = Tolerance::new((1e-14 * scale).max(f64::MIN_POSITIVE), 1e-12, 400)?;
    let tail = integrate_1d(term, l0, f64::INFINITY, &tol)?;
    Ok(s + tail + 0.5 * f0 - df0 / 12.0)
}

/// Normalized coherence g¹(r) = G¹(r)/G¹(0) at temperature T and chemical potential μ ≤ 0.
pub fn pair_correlation_g1(r: f64, temperature: f64, mu: f64, mass: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return domain(format!("distance must be >= 0, got {r}"));
    }
    if !(temperature > 0.0) {
        return domain(format!("temperature must be positive, got {temperature}"));
    }
    if mu.is_nan() || mu > 0.0 {
        return domain(format!("coherence needs μ <= 0, got {mu}"));
    }
    let c = -mu / (K_B * temperature);
    let lambda = crate::constants::thermal_wavelength(mass, temperature);
    g1_reduced(r / lambda, c)
}

fn g1_reduced(rho: f64, c: f64) -> Result<f64> {
    if rho == 0.0 {
        return Ok(1.0);
    }
    let g0 = BoseFunction::new(1.5).eval_mu(-c)?;
    Ok(coherence_sum(rho, c)? / g0)
}

/// ξ = λ/√(-4πβμ).
pub fn correlation_length(temperature: f64, mu: f64, mass: f64) -> Result<f64> {
    if mu == 0.0 {
        return Err(Error::DivergentValue("correlation length diverges at μ = 0".into()));
    }
    if !(mu < 0.0) || !(temperature > 0.0) {
        return domain(format!(
            "correlation length needs μ < 0 and T > 0, got μ = {mu}, T = {temperature}"
        ));
    }
    let lambda = crate::constants::thermal_wavelength(mass, temperature);
    Ok(lambda / (-4.0 * PI * mu / (K_B * temperature)).sqrt())
}

/// M/D with M = ∫|g¹|²ρ dρ and D = ∫|g¹|²ρ² dρ over ρ = r/λ in [0, ∞).
///
/// The suppression is 1 - 4(a/λ)·M/D; a Gaussian g¹ gives M/D = 2√2.
pub fn suppression_ratio(c: f64) -> Result<f64> {
    if !(c >= 0.0) {
        return domain(format!("suppression ratio needs c = -βμ >= 0, got {c}"));
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    let g0 = BoseFunction::new(1.5).eval_mu(-c)?;
    let xi = 1.0 / (4.0 * PI * c).sqrt();
    let scale = xi.max(1.0 / (2.0 * PI).sqrt());
    let tol = Tolerance::new(1e-300, 1e-9, 400)?;
    let failure = std::cell::Cell::new(None);
    let sq = |s: f64| match coherence_sum(s * scale, c) {
        Ok(v) => (v / g0).powi(2),
        Err(e) => {
            failure.set(Some(e));
            0.0
        }
    };
    let m = integrate_1d(|s| sq(s) * s, 0.0, f64::INFINITY, &tol)?;
    let d = integrate_1d(|s| sq(s) * s * s, 0.0, f64::INFINITY, &tol)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(m / (d * scale))
}

/// c beyond which M/D equals its Gaussian value to better than 1e-8.
const TABLE_C_MAX: f64 = 20.0;
const TABLE_NODES: usize = 48;

/// Spline of M/D against c^{1/3}, built on first use.
pub(crate) fn suppression_ratio_interpolated(c: f64) -> Result<f64> {
    static TABLE: OnceLock<std::result::Result<CubicSpline, String>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let build = || -> Result<CubicSpline> {
            let mut u = Vec::with_capacity(TABLE_NODES + 1);
            let mut v = Vec::with_capacity(TABLE_NODES + 1);
            for i in 0..=TABLE_NODES {
                let ui = TABLE_C_MAX.cbrt() * i as f64 / TABLE_NODES as f64;
                u.push(ui);
                v.push(suppression_ratio(ui.powi(3))?);
            }
            CubicSpline::new(u, v)
        };
        build().map_err(|e| e.to_string())
    });
    let spline = table.as_ref().map_err(|_| Error::NonConvergence {
        what: "suppression table",
        iterations: TABLE_NODES,
        residual: f64::NAN,
    })?;
    if !(c >= 0.0) {
        return domain(format!("c must be >= 0, got {c}"));
    }
    Ok(spline.eval(c.min(TABLE_C_MAX).cbrt()))
}

/// Multiplicative suppression of S - 1 by the repulsive pair correlation.
pub fn structure_suppression(temperature: f64, mu: f64, spec: &InteractionSpec, hint: RegimeHint) -> Result<f64> {
    if !(temperature > 0.0) {
        return domain(format!("temperature must be positive, got {temperature}"));
    }
    if mu.is_nan() || mu > 0.0 {
        return domain(format!("suppression needs μ <= 0, got {mu}"));
    }
    let lambda = spec.thermal_wavelength(temperature);
    let a = spec.a;
    let value = match hint {
        RegimeHint::HighT => 1.0 - 8.0 * 2f64.sqrt() * a / lambda,
        RegimeHint::NearCritical => {
            if mu == 0.0 {
                1.0
            } else {
                let xi = correlation_length(temperature, mu, spec.mass)?;
                1.0 - 8.0 * a / xi * gamma_upper(0.0, 2.0 * lambda / xi)?
            }
        }
        RegimeHint::Auto => 1.0 - 4.0 * a / lambda * suppression_ratio(-mu / (K_B * temperature))?,
    };
    if !(value > 0.0) {
        return domain(format!(
            "suppression factor {value} <= 0; the perturbative correction has broken down"
        ));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sodium() -> InteractionSpec {
        InteractionSpec::sodium(85.0, 2700.0, 4e5).unwrap()
    }

    /// M and D from the double series of Gaussian overlaps.
    fn ratio_double_series(c: f64) -> f64 {
        let lmax = (60.0 / c).ceil() as usize;
        let w: Vec<f64> = (1..=lmax)
            .map(|l| (-(l as f64) * c).exp() * (l as f64).powf(-1.5))
            .collect();
        let (mut m, mut d) = (0.0, 0.0);
        for (i, wi) in w.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                let (l, k) = ((i + 1) as f64, (j + 1) as f64);
                let a = PI * (l + k) / (l * k);
                m += wi * wj / (2.0 * a);
                d += wi * wj * PI.sqrt() / (4.0 * a.powf(1.5));
            }
        }
        m / d
    }

    #[test]
    fn ratio_matches_double_series() {
        for c in [0.05, 0.3, 1.0, 4.0] {
            let got = suppression_ratio(c).unwrap();
            let want = ratio_double_series(c);
            assert!((got / want - 1.0).abs() < 1e-7, "c={c}: {got} vs {want}");
        }
    }

    #[test]
    fn gaussian_limit() {
        assert!((suppression_ratio(25.0).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-8);
        let s = sodium();
        let t = 30e-6;
        let mu = -6.0 * K_B * t;
        let auto = structure_suppression(t, mu, &s, RegimeHint::Auto).unwrap();
        let high = structure_suppression(t, mu, &s, RegimeHint::HighT).unwrap();
        assert!((auto / high - 1.0).abs() < 0.02);
    }

    #[test]
    fn near_critical_vanishes() {
        let s = sodium();
        let t = 9e-6;
        // ξ = 60λ.
        let c = 1.0 / (4.0 * PI * 3600.0);
        let auto = structure_suppression(t, -c * K_B * t, &s, RegimeHint::Auto).unwrap();
        assert!(auto > 0.95 && auto < 1.0, "{auto}");
        assert_eq!(structure_suppression(t, 0.0, &s, RegimeHint::Auto).unwrap(), 1.0);
        assert_eq!(
            structure_suppression(t, 0.0, &s, RegimeHint::NearCritical).unwrap(),
            1.0
        );
    }

    #[test]
    fn zero_scattering_length_is_unity() {
        let s = sodium().with_a(0.0);
        for hint in [RegimeHint::HighT, RegimeHint::NearCritical, RegimeHint::Auto] {
            assert_eq!(structure_suppression(9e-6, -0.2 * K_B * 9e-6, &s, hint).unwrap(), 1.0);
        }
    }

    #[test]
    fn strong_coupling_is_an_error() {
        let s = sodium().with_a(2000.0 * crate::constants::BOHR_RADIUS);
        assert!(structure_suppression(9e-6, -K_B * 9e-6, &s, RegimeHint::HighT).is_err());
    }

    #[test]
    fn high_t_value_at_reference_parameters() {
        let s = sodium();
        let v = structure_suppression(s.ideal_tc(), -K_B * s.ideal_tc(), &s, RegimeHint::HighT).unwrap();
        assert!((v - 0.581).abs() < 0.002, "{v}");
    }

    #[test]
    fn correlation_length_forms() {
        let m = crate::constants::SODIUM_MASS;
        let t = 5e-6;
        let lam = crate::constants::thermal_wavelength(m, t);
        let xi = correlation_length(t, -K_B * t / (4.0 * PI), m).unwrap();
        assert!((xi / lam - 1.0).abs() < 1e-14);
        let x2 = correlation_length(t, -K_B * t / (8.0 * PI), m).unwrap();
        assert!((x2 / xi - 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(correlation_length(t, 0.0, m), Err(Error::DivergentValue(_))));
    }

    #[test]
    fn g1_limits() {
        assert_eq!(g1_reduced(0.0, 0.3).unwrap(), 1.0);
        // High temperature: the l = 1 Gaussian.
        let c = 12.0;
        for rho in [0.1, 0.4, 0.8] {
            let g = g1_reduced(rho, c).unwrap();
            assert!((g / (-PI * rho * rho).exp() - 1.0).abs() < 1e-4);
        }
        // Near criticality: (λ/r) e^{-r/ξ} up to a constant.
        let c = 1e-4;
        let xi = 1.0 / (4.0 * PI * c).sqrt();
        let shape = |rho: f64| g1_reduced(rho, c).unwrap() * rho * (rho / xi).exp();
        let (s1, s2) = (shape(3.0), shape(20.0));
        assert!((s1 / s2 - 1.0).abs() < 0.01, "{s1} {s2}");
    }

    #[test]
    fn interpolated_ratio_tracks_direct() {
        for c in [1e-3, 0.02, 0.37, 2.2, 9.0, 30.0] {
            let a = suppression_ratio_interpolated(c).unwrap();
            let b = suppression_ratio(c.min(TABLE_C_MAX)).unwrap();
            assert!((a - b).abs() < 2e-3, "c={c}: {a} vs {b}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn g1_in_unit_interval_and_decreasing(c in 1e-3f64..5.0, rho in 0.01f64..4.0, d in 0.01f64..1.0) {
            let a = g1_reduced(rho, c).unwrap();
            let b = g1_reduced(rho + d, c).unwrap();
            prop_assert!(a > 0.0 && a <= 1.0);
            prop_assert!(b < a);
        }
    }
}
