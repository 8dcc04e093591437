//! Structure factor of the interacting trapped gas.

use super::correlation::suppression_ratio_interpolated;
use super::profile::{overlap_reduction_factor, profile, DensityProfile, ProfileModel};
use super::spec::InteractionSpec;
use crate::constants::K_B;
use crate::error::{domain, Error, Result};
use crate::ideal::kernel::homogeneous_correlation;
use crate::ideal::{recoil_occupation, EnhancementResult, KernelTolerance};
use crate::numerics::CubicSpline;
use crate::trap::{RecoilSpec, Statistics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteractingModel {
    /// Ideal-gas correlations in the Hartree-Fock potential.
    MFOnly,
    /// MFOnly times 1 - 8√2 a/λ.
    MFPlusOverallSuppression,
    /// Local correlations with the local pair suppression, summed over the cloud.
    FullInteracting,
    /// Semi-ideal profile with overlap reduction and 1 - 8√2 a/λ.
    SemiIdealBelowTc,
}

impl InteractingModel {
    pub fn name(self) -> &'static str {
        match self {
            InteractingModel::MFOnly => "mf-only",
            InteractingModel::MFPlusOverallSuppression => "mf-plus-overall-suppression",
            InteractingModel::FullInteracting => "full-interacting",
            InteractingModel::SemiIdealBelowTc => "semi-ideal-below-tc",
        }
    }
}

/// Largest tabulated c = βΔ; beyond it Φ falls off as e^{-2c}.
const PHI_C_MAX: f64 = 45.0;
const PHI_NODES: usize = 72;

/// ln Φ(c) of the uniform gas, splined against √c at fixed κ_T.
struct PhiTable {
    spline: CubicSpline,
}

impl PhiTable {
    fn new(kappa_t: f64) -> Result<Self> {
        let tol = KernelTolerance::with_rel(1e-8);
        let mut s = Vec::with_capacity(PHI_NODES + 1);
        let mut v = Vec::with_capacity(PHI_NODES + 1);
        for i in 0..=PHI_NODES {
            // Nodes cluster at c = 0, where Φ has a √c cusp.
            let si = PHI_C_MAX.sqrt() * (i as f64 / PHI_NODES as f64).powi(2);
            s.push(si);
            v.push(homogeneous_correlation(si * si, kappa_t, &tol)?.ln());
        }
        Ok(PhiTable {
            spline: CubicSpline::new(s, v)?,
        })
    }

    fn eval(&self, c: f64) -> f64 {
        let c = c.max(0.0);
        if c > PHI_C_MAX {
            return (self.spline.eval(PHI_C_MAX.sqrt()) - 2.0 * (c - PHI_C_MAX)).exp();
        }
        self.spline.eval(c.sqrt()).exp()
    }
}

/// (1/N) ∫ d³r w(c) Φ(c)/λ³ with c = βΔ(r) over the thermal cloud.
fn local_average<W: Fn(f64) -> Result<f64>>(
    p: &DensityProfile,
    phi: &PhiTable,
    lambda3: f64,
    weight: W,
) -> Result<f64> {
    let beta = 1.0 / (K_B * p.temperature);
    let mut v = Vec::with_capacity(p.r_grid.len());
    for gap in &p.thermal_gap {
        let c = beta * gap;
        v.push(weight(c)? * phi.eval(c) / lambda3);
    }
    Ok(p.radial_integral(&v) / p.n_atoms)
}

/// S(q) for `model` at temperature T.
///
/// `recoil.kappa` is measured against the ideal-gas T_c of `spec`.
pub fn structure_factor_interacting(
    temperature: f64,
    spec: &InteractionSpec,
    recoil: &RecoilSpec,
    model: InteractingModel,
) -> Result<EnhancementResult> {
    if recoil.statistics != Statistics::Bose {
        return Err(Error::ModelMismatch("interacting models describe bosons only".into()));
    }
    if !(temperature > 0.0) {
        return domain(format!("temperature must be positive, got {temperature}"));
    }
    if !(recoil.kappa > 0.0) {
        return domain("interacting structure factor needs κ > 0");
    }
    let tc0 = spec.ideal_tc();
    let kt = K_B * temperature;
    let kappa_t = (spec.recoil_energy(recoil.kappa) / kt).sqrt();
    let lambda = spec.thermal_wavelength(temperature);
    let lambda3 = lambda.powi(3);
    let high_t = 1.0 - 8.0 * 2f64.sqrt() * spec.a / lambda;
    if !(high_t > 0.0) {
        return domain(format!(
            "suppression factor {high_t} <= 0; the perturbative correction has broken down"
        ));
    }
    let phi = PhiTable::new(kappa_t)?;

    match model {
        InteractingModel::SemiIdealBelowTc => {
            if temperature >= tc0 {
                return Err(Error::ModelMismatch(format!(
                    "semi-ideal model applies below T_c = {tc0:e} K, got T = {temperature:e} K"
                )));
            }
            let p = profile(ProfileModel::SemiIdeal, temperature, spec)?;
            let f = p.condensate_fraction();
            let overlap = if spec.a == 0.0 {
                1.0
            } else {
                overlap_reduction_factor(&p, recoil, spec)?
            };
            let bec = 2.0 * f * recoil_occupation(kappa_t, 1.0) * overlap;
            let tt = local_average(&p, &phi, lambda3, |_| Ok(1.0))?;
            let mut r = EnhancementResult::from_terms(high_t * bec, high_t * tt);
            r.overlap_factor = overlap;
            r.pair_correlation_factor = high_t;
            Ok(r)
        }
        _ => {
            let p = profile(ProfileModel::HartreeFock, temperature, spec)?;
            if p.condensed_atoms > 0.0 {
                return Err(Error::ModelMismatch(format!(
                    "{} applies above the Hartree-Fock T_c; the cloud at T = {temperature:e} K holds a condensate",
                    model.name()
                )));
            }
            let mf = local_average(&p, &phi, lambda3, |_| Ok(1.0))?;
            let (tt, factor) = match model {
                InteractingModel::MFOnly => (mf, 1.0),
                InteractingModel::MFPlusOverallSuppression => (mf * high_t, high_t),
                _ => {
                    let a_over_l = spec.a / lambda;
                    let full = local_average(&p, &phi, lambda3, |c| {
                        Ok(1.0 - 4.0 * a_over_l * suppression_ratio_interpolated(c)?)
                    })?;
                    (full, full / mf)
                }
            };
            let mut r = EnhancementResult::from_terms(0.0, tt);
            r.pair_correlation_factor = factor;
            Ok(r)
        }
    }
}
