//! Power-law trap geometry, density-of-states exponent, critical temperature
//! and recoil normalization.

use std::f64::consts::PI;

use crate::constants::{HBAR, K_B};
use crate::error::{domain, Result};
use crate::specfun::zeta;

/// Exponent α of the confining potential V ∝ r^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrapPower {
    Finite(f64),
    /// Hard-walled box, α = ∞.
    Box,
}

impl TrapPower {
    /// d/α, zero for the box.
    fn d_over_alpha(self, d: u32) -> f64 {
        match self {
            TrapPower::Finite(a) => d as f64 / a,
            TrapPower::Box => 0.0,
        }
    }
}

/// Quantum statistics of the scatterers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    /// +1 for bosons, -1 for fermions.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Bose => 1.0,
            Statistics::Fermi => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapSpec {
    pub dimension: u32,
    pub power: TrapPower,
    /// Angular frequency in rad/s, used when α = 2.
    pub frequency: Option<f64>,
    /// Box side or potential length scale in m, used for α ≠ 2.
    pub characteristic_length: Option<f64>,
}

impl TrapSpec {
    pub fn harmonic_3d(omega: f64) -> Self {
        TrapSpec {
            dimension: 3,
            power: TrapPower::Finite(2.0),
            frequency: Some(omega),
            characteristic_length: None,
        }
    }

    pub fn box_3d(side: Option<f64>) -> Self {
        TrapSpec {
            dimension: 3,
            power: TrapPower::Box,
            frequency: None,
            characteristic_length: side,
        }
    }

    /// Isotropic trap at the geometric mean frequency (ω_x ω_y ω_z)^{1/3}.
    pub fn harmonic_anisotropic(wx: f64, wy: f64, wz: f64) -> Result<Self> {
        Ok(Self::harmonic_3d(mean_frequency(wx, wy, wz)?))
    }

    pub fn dos_exponent(&self) -> Result<f64> {
        dos_exponent(self.dimension, self.power)
    }

    /// Critical temperature for `n_atoms` atoms of mass `mass`.
    ///
    /// Harmonic traps use k_B T_c = ħω(N/ζ(d))^{1/d}; boxes use n λ^d = ζ(d/2).
    pub fn critical_temperature(&self, n_atoms: f64, mass: f64) -> Result<f64> {
        if !(n_atoms > 0.0) || !(mass > 0.0) {
            return domain("critical temperature needs positive atom number and mass");
        }
        let d = self.dimension as f64;
        match self.power {
            TrapPower::Finite(2.0) => {
                let omega = self
                    .frequency
                    .ok_or_else(|| crate::Error::DomainError("harmonic trap requires a frequency".into()))?;
                if !(omega > 0.0) {
                    return domain("trap frequency must be positive");
                }
                Ok(HBAR * omega / K_B * (n_atoms / zeta(d)?).powf(1.0 / d))
            }
            TrapPower::Box => {
                let side = self
                    .characteristic_length
                    .ok_or_else(|| crate::Error::DomainError("box trap requires a side length".into()))?;
                if !(side > 0.0) {
                    return domain("box side must be positive");
                }
                let density = n_atoms / side.powf(d);
                let lambda = (zeta(0.5 * d)? / density).powf(1.0 / d);
                Ok(2.0 * PI * HBAR * HBAR / (mass * K_B * lambda * lambda))
            }
            TrapPower::Finite(_) => domain("critical temperature implemented for harmonic and box traps only"),
        }
    }
}

/// Dimensionless recoil κ = √(E_rec/k_B T_c) and the statistics sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilSpec {
    pub kappa: f64,
    pub statistics: Statistics,
}

impl RecoilSpec {
    pub fn bose(kappa: f64) -> Result<Self> {
        Self::new(kappa, Statistics::Bose)
    }

    pub fn new(kappa: f64, statistics: Statistics) -> Result<Self> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return domain(format!("kappa must be finite and >= 0, got {kappa}"));
        }
        Ok(RecoilSpec { kappa, statistics })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnhancementClass {
    Bounded,
    /// S diverges as κ^exponent at the transition.
    DivergesAtTc {
        exponent: f64,
    },
    /// S above T_c never exceeds ζ(x)/ζ(1+x).
    BoundedAboveTcByZetaRatio {
        value: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub x: f64,
    pub has_bec: bool,
    pub enhancement_class: EnhancementClass,
}

/// x = d/2 + d/α - 1.
pub fn dos_exponent(d: u32, alpha: TrapPower) -> Result<f64> {
    if d < 1 {
        return domain("dimension must be >= 1");
    }
    if let TrapPower::Finite(a) = alpha {
        if !(a > 0.0) {
            return domain(format!("trap power must be positive, got {a}"));
        }
    }
    Ok(d as f64 / 2.0 + alpha.d_over_alpha(d) - 1.0)
}

/// Regime of the density-of-states exponent x.
pub fn classify_regime(x: f64) -> RegimeReport {
    let (has_bec, enhancement_class) = if x <= 0.0 {
        (false, EnhancementClass::Bounded)
    } else if x <= 1.0 {
        (
            true,
            EnhancementClass::DivergesAtTc {
                exponent: 2.0 * x - 2.0,
            },
        )
    } else {
        let value = zeta(x)
            .and_then(|a| zeta(1.0 + x).map(|b| a / b))
            .unwrap_or(f64::INFINITY);
        (true, EnhancementClass::BoundedAboveTcByZetaRatio { value })
    };
    RegimeReport {
        x,
        has_bec,
        enhancement_class,
    }
}

/// k_B T_c = ħω(N/ζ(3))^{1/3}.
pub fn critical_temperature_harmonic(n_atoms: f64, omega: f64) -> Result<f64> {
    if !(n_atoms >= 1.0) || !(omega > 0.0) {
        return domain(format!("need N >= 1 and omega > 0, got {n_atoms}, {omega}"));
    }
    Ok(HBAR * omega / K_B * (n_atoms / zeta(3.0)?).cbrt())
}

/// |q| = (4π/λ) sin(θ/2) for light of wavelength λ scattered by angle θ.
pub fn scattering_wavevector(wavelength: f64, angle: f64) -> Result<f64> {
    if !(wavelength > 0.0) {
        return domain("wavelength must be positive");
    }
    Ok(4.0 * PI / wavelength * (0.5 * angle).sin().abs())
}

/// κ = √(ħ²q²/(2m k_B T_c)), the recoil energy of momentum transfer ħq in units of k_B T_c.
pub fn kappa_from_physical(q: f64, mass: f64, t_c: f64) -> Result<f64> {
    if !(q > 0.0) || !(mass > 0.0) || !(t_c > 0.0) {
        return domain("kappa_from_physical needs positive q, mass and T_c");
    }
    Ok((HBAR * HBAR * q * q / (2.0 * mass * K_B * t_c)).sqrt())
}

/// Geometric mean (ω_x ω_y ω_z)^{1/3}.
pub fn mean_frequency(wx: f64, wy: f64, wz: f64) -> Result<f64> {
    if !(wx > 0.0 && wy > 0.0 && wz > 0.0) {
        return domain("trap frequencies must be positive");
    }
    Ok((wx * wy * wz).cbrt())
}

/// Oscillator length √(ħ/(mω)).
pub fn oscillator_length(mass: f64, omega: f64) -> f64 {
    (HBAR / (mass * omega)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{SODIUM_D2_WAVELENGTH, SODIUM_MASS};
    use proptest::prelude::*;

    #[test]
    fn dos_examples() {
        assert_eq!(dos_exponent(3, TrapPower::Finite(2.0)).unwrap(), 2.0);
        assert_eq!(dos_exponent(3, TrapPower::Box).unwrap(), 0.5);
        assert_eq!(dos_exponent(3, TrapPower::Finite(1.0)).unwrap(), 3.5);
        assert!(dos_exponent(0, TrapPower::Box).is_err());
        assert!(dos_exponent(3, TrapPower::Finite(0.0)).is_err());
        assert!(dos_exponent(3, TrapPower::Finite(-1.0)).is_err());
    }

    #[test]
    fn regime_rows() {
        let r = classify_regime(2.0);
        assert!(r.has_bec);
        match r.enhancement_class {
            EnhancementClass::BoundedAboveTcByZetaRatio { value } => {
                assert!((value - 1.368_432_777_620_21).abs() < 1e-12)
            }
            c => panic!("{c:?}"),
        }
        let r = classify_regime(0.5);
        assert_eq!(r.enhancement_class, EnhancementClass::DivergesAtTc { exponent: -1.0 });
        let r = classify_regime(-0.5);
        assert!(!r.has_bec);
        assert_eq!(r.enhancement_class, EnhancementClass::Bounded);
        assert_eq!(classify_regime(0.0).enhancement_class, EnhancementClass::Bounded);
        assert_eq!(
            classify_regime(1.0).enhancement_class,
            EnhancementClass::DivergesAtTc { exponent: 0.0 }
        );
    }

    #[test]
    fn zeta_ratio_blows_up_at_marginal_exponent() {
        match classify_regime(1.001).enhancement_class {
            EnhancementClass::BoundedAboveTcByZetaRatio { value } => assert!(value > 100.0),
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn harmonic_tc() {
        let omega = 2.0 * PI * 2700.0;
        let n = zeta(3.0).unwrap() * 1e6;
        let tc = critical_temperature_harmonic(n, omega).unwrap();
        assert!((tc - 100.0 * HBAR * omega / K_B).abs() < 1e-12 * tc);
        assert!((tc - 12.96e-6).abs() < 0.01e-6);
        let tc = critical_temperature_harmonic(4e5, omega).unwrap();
        assert!((tc - 8.97e-6).abs() < 0.02e-6);
        let t8 = critical_temperature_harmonic(3.2e6, omega).unwrap();
        assert!((t8 / tc - 2.0).abs() < 1e-12);
        assert!(critical_temperature_harmonic(0.0, omega).is_err());
        assert!(critical_temperature_harmonic(10.0, -1.0).is_err());
        let spec = TrapSpec::harmonic_3d(omega);
        assert!((spec.critical_temperature(4e5, SODIUM_MASS).unwrap() - tc).abs() < 1e-18);
    }

    #[test]
    fn box_tc_matches_critical_density() {
        let side = 50e-6;
        let n = 1e5;
        let tc = TrapSpec::box_3d(Some(side))
            .critical_temperature(n, SODIUM_MASS)
            .unwrap();
        let lambda = crate::constants::thermal_wavelength(SODIUM_MASS, tc);
        let nl3 = n / side.powi(3) * lambda.powi(3);
        assert!((nl3 - 2.612_375_348_685_488).abs() < 1e-10);
    }

    #[test]
    fn kappa_examples() {
        let mass = SODIUM_MASS;
        let tc = 9.2e-6;
        let q_unit = (2.0 * mass * K_B * tc).sqrt() / HBAR;
        assert!((kappa_from_physical(q_unit, mass, tc).unwrap() - 1.0).abs() < 1e-12);
        let q = scattering_wavevector(SODIUM_D2_WAVELENGTH, 0.5 * PI).unwrap();
        let k = 2.0 * PI / SODIUM_D2_WAVELENGTH;
        assert!((q - 2f64.sqrt() * k).abs() < 1e-6 * q);
        let kappa = kappa_from_physical(q, mass, tc).unwrap();
        assert!((kappa - 0.51).abs() < 0.01, "{kappa}");
        let k4 = kappa_from_physical(q, mass, 4.0 * tc).unwrap();
        assert!((k4 - kappa / 2.0).abs() < 1e-12);
        assert!(kappa_from_physical(0.0, mass, tc).is_err());
    }

    #[test]
    fn anisotropic_reduction() {
        let s = TrapSpec::harmonic_anisotropic(1.0, 8.0, 27.0).unwrap();
        assert!((s.frequency.unwrap() - 6.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn dos_monotone(d in 1u32..6, a in 0.2f64..20.0, da in 0.01f64..5.0) {
            let x = dos_exponent(d, TrapPower::Finite(a)).unwrap();
            prop_assert!(dos_exponent(d + 1, TrapPower::Finite(a)).unwrap() > x);
            prop_assert!(dos_exponent(d, TrapPower::Finite(a + da)).unwrap() < x);
            prop_assert!(dos_exponent(d, TrapPower::Box).unwrap() < x);
        }
    }
}
