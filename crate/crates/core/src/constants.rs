//! CODATA 2018 constants in SI units.

pub const PLANCK: f64 = 6.626_070_15e-34;
/// h/2π ≈ 1.054571817e-34 J·s.
pub const HBAR: f64 = PLANCK / std::f64::consts::TAU;
pub const K_B: f64 = 1.380_649e-23;
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of ²³Na.
pub const SODIUM_MASS: f64 = 22.989_769_28 * ATOMIC_MASS_UNIT;
/// Sodium D2 vacuum wavelength.
pub const SODIUM_D2_WAVELENGTH: f64 = 589.158e-9;

/// Thermal de Broglie wavelength h/√(2π m k_B T).
pub fn thermal_wavelength(mass: f64, temperature: f64) -> f64 {
    PLANCK / (std::f64::consts::TAU * mass * K_B * temperature).sqrt()
}
