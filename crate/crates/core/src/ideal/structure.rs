//! Structure factor S(q) of the ideal gas.

use std::f64::consts::PI;

use super::kernel::{pair_integral, KernelTolerance};
use super::state::{fermi_dirac_integral, GasState};
use crate::error::{domain, Error, Result};
use crate::specfun::{gamma_fn, polylog_exp, zeta, BoseFunction};
use crate::trap::{RecoilSpec, Statistics};

/// S(q) and its decomposition into single-particle, condensate–thermal and
/// thermal–thermal pieces, together with any interaction factors applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhancementResult {
    pub s: f64,
    pub term_single: f64,
    pub term_bec_thermal: f64,
    pub term_thermal_thermal: f64,
    /// Condensate–thermal overlap reduction (1 without interactions).
    pub overlap_factor: f64,
    /// Pair-correlation suppression of S - 1 (1 without interactions).
    pub pair_correlation_factor: f64,
}

impl EnhancementResult {
    pub fn from_terms(term_bec_thermal: f64, term_thermal_thermal: f64) -> Self {
        EnhancementResult {
            s: 1.0 + term_bec_thermal + term_thermal_thermal,
            term_single: 1.0,
            term_bec_thermal,
            term_thermal_thermal,
            overlap_factor: 1.0,
            pair_correlation_factor: 1.0,
        }
    }

    /// S - 1.
    pub fn enhancement(&self) -> f64 {
        self.term_bec_thermal + self.term_thermal_thermal
    }
}

/// n_th(0, q) = 1/(e^{κ²/t} - 1), the thermal occupation at the recoil momentum.
pub fn recoil_occupation(kappa: f64, t: f64) -> f64 {
    1.0 / (kappa * kappa / t).exp_m1()
}

/// S(q) = 1 ± ⟨n(r, p+q)⟩ averaged over the phase-space distribution of `state`.
///
/// Below T_c the condensate contributes 2f·n_th(0,q) analytically and the
/// thermal cloud is evaluated at z = 1.
pub fn structure_factor(state: &GasState, recoil: &RecoilSpec) -> Result<EnhancementResult> {
    structure_factor_with(state, recoil, &KernelTolerance::default())
}

pub fn structure_factor_with(
    state: &GasState,
    recoil: &RecoilSpec,
    tol: &KernelTolerance,
) -> Result<EnhancementResult> {
    if state.statistics != recoil.statistics {
        return Err(Error::ModelMismatch(
            "gas state and recoil specify different statistics".into(),
        ));
    }
    let x = state.x;
    let t = state.t;
    if !(t > 0.0) {
        return domain("reduced temperature must be positive");
    }
    let kappa = recoil.kappa;
    let kappa_t = kappa / t.sqrt();
    let eta = state.log_fugacity;
    let norm = PI.sqrt() * gamma_fn(x + 0.5)?;
    match state.statistics {
        Statistics::Bose => {
            if kappa == 0.0 && (state.f > 0.0 || eta == 0.0) && x <= 1.0 {
                return Err(Error::DivergentValue(
                    "kappa = 0 at t <= 1 diverges; use the closed form or the asymptote".into(),
                ));
            }
            let occupancy = if eta == 0.0 {
                zeta(x + 1.0)?
            } else {
                polylog_exp(x + 1.0, eta)?
            };
            let bec_thermal = if state.f > 0.0 {
                if kappa == 0.0 {
                    return Err(Error::DivergentValue("condensate term diverges at kappa = 0".into()));
                }
                2.0 * state.f * recoil_occupation(kappa, t)
            } else {
                0.0
            };
            let i = pair_integral(Statistics::Bose, x, eta, kappa_t, tol)?;
            let tt = state.thermal_fraction() * i / (norm * occupancy);
            Ok(EnhancementResult::from_terms(bec_thermal, tt))
        }
        Statistics::Fermi => {
            let occupancy = fermi_dirac_integral(x, eta)?;
            let i = pair_integral(Statistics::Fermi, x, eta, kappa_t, tol)?;
            Ok(EnhancementResult::from_terms(0.0, -i / (norm * occupancy)))
        }
    }
}

/// S(0) = g_x(z)/g_{1+x}(z), single-particle term included.
pub fn enhancement_closed_form_k0(z: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return domain(format!("fugacity must lie in [0, 1], got {z}"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z == 1.0 && x <= 1.0 {
        return Err(Error::DivergentValue(format!("g_x(1) diverges for x = {x} <= 1")));
    }
    let num = BoseFunction::new(x).eval(z)?;
    let den = BoseFunction::new(1.0 + x).eval(z)?;
    Ok(num / den)
}

/// Leading small-κ behaviour at T_c for 0 < x < 1:
/// 2π^{3/2} κ^{2x-2} / (4^x sin(πx) Γ(x+1/2) ζ(x+1)).
///
/// The value is the asymptote of S itself; S and S - 1 share this leading term.
pub fn enhancement_asymptote_small_kappa(kappa: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("asymptote defined for 0 < x < 1 only, got {x}"));
    }
    if !(kappa > 0.0) {
        return domain("kappa must be positive");
    }
    Ok(asymptote_prefactor(x)? * kappa.powf(2.0 * x - 2.0))
}

/// 2π^{3/2} / (4^x sin(πx) Γ(x+1/2) ζ(x+1)).
pub fn asymptote_prefactor(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("asymptote defined for 0 < x < 1 only, got {x}"));
    }
    Ok(2.0 * PI.powf(1.5) / (4f64.powf(x) * (PI * x).sin() * gamma_fn(x + 0.5)? * zeta(x + 1.0)?))
}

/// Enhancement 1 + nλ³/2^{3/2} from naively extending the Boltzmann-gas
/// result to the phase-space density `n_lambda3`.
pub fn naive_psd_enhancement(n_lambda3: f64) -> f64 {
    1.0 + n_lambda3 / 2f64.powf(1.5)
}
