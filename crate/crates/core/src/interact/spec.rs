//! Interaction parameters of a harmonically trapped Bose gas.

use std::f64::consts::PI;

use crate::constants::{thermal_wavelength, BOHR_RADIUS, HBAR, K_B, SODIUM_MASS};
use crate::error::{domain, Result};
use crate::specfun::zeta;
use crate::trap::{critical_temperature_harmonic, oscillator_length};

/// Contact interaction in an isotropic harmonic trap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionSpec {
    /// s-wave scattering length (m), repulsive.
    pub a: f64,
    /// Atomic mass (kg).
    pub mass: f64,
    /// Mean trap angular frequency (rad/s).
    pub omega: f64,
    pub n_atoms: f64,
}

impl InteractionSpec {
    pub fn new(a: f64, mass: f64, omega: f64, n_atoms: f64) -> Result<Self> {
        if !(a >= 0.0) {
            return domain(format!("scattering length must be >= 0, got {a}"));
        }
        if !(mass > 0.0) || !(omega > 0.0) || !(n_atoms >= 1.0) {
            return domain("mass, trap frequency and atom number must be positive");
        }
        Ok(InteractionSpec {
            a,
            mass,
            omega,
            n_atoms,
        })
    }

    /// Sodium with scattering length in Bohr radii and trap frequency in Hz.
    pub fn sodium(a_bohr: f64, trap_hz: f64, n_atoms: f64) -> Result<Self> {
        Self::new(a_bohr * BOHR_RADIUS, SODIUM_MASS, 2.0 * PI * trap_hz, n_atoms)
    }

    /// g = 4πħ²a/m.
    pub fn g(&self) -> f64 {
        4.0 * PI * HBAR * HBAR * self.a / self.mass
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    pub fn with_n_atoms(mut self, n: f64) -> Self {
        self.n_atoms = n;
        self
    }

    pub fn oscillator_length(&self) -> f64 {
        oscillator_length(self.mass, self.omega)
    }

    /// Ideal-gas critical temperature ħω(N/ζ(3))^{1/3}/k_B.
    pub fn ideal_tc(&self) -> f64 {
        critical_temperature_harmonic(self.n_atoms, self.omega).expect("validated spec")
    }

    pub fn thermal_wavelength(&self, temperature: f64) -> f64 {
        thermal_wavelength(self.mass, temperature)
    }

    /// U(r) = m ω² r²/2.
    pub fn potential(&self, r: f64) -> f64 {
        0.5 * self.mass * self.omega * self.omega * r * r
    }

    /// Radius at which U(r) = e.
    pub fn radius_at(&self, e: f64) -> f64 {
        if e <= 0.0 {
            0.0
        } else {
            (2.0 * e / (self.mass * self.omega * self.omega)).sqrt()
        }
    }

    /// Thomas-Fermi chemical potential (ħω/2)(15 N₀ a/a_ho)^{2/5}.
    pub fn thomas_fermi_mu(&self, n0: f64) -> f64 {
        0.5 * HBAR * self.omega * (15.0 * n0 * self.a / self.oscillator_length()).powf(0.4)
    }

    /// Recoil energy κ² k_B T_c for a recoil normalized to the ideal T_c.
    pub fn recoil_energy(&self, kappa: f64) -> f64 {
        kappa * kappa * K_B * self.ideal_tc()
    }
}

/// Peak thermal density at T_c over the peak T = 0 condensate density:
/// (ζ(3/2)/λ_t³(T_c)) / (μ₀/g) with μ₀ = (ħω/2)(15Na/a_ho)^{2/5}.
pub fn density_ratio_scaling(spec: &InteractionSpec) -> Result<f64> {
    if !(spec.a > 0.0) {
        return domain("density ratio needs a > 0; the Thomas-Fermi density is undefined at a = 0");
    }
    let tc = spec.ideal_tc();
    let lambda = spec.thermal_wavelength(tc);
    let n_th = zeta(1.5)? / lambda.powi(3);
    let n0 = spec.thomas_fermi_mu(spec.n_atoms) / spec.g();
    Ok(n_th / n0)
}
