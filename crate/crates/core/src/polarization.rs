//! Rayleigh and Raman branches of σ₋ scattering in a multi-level atom.

use crate::error::{domain, Error, Result};

/// Branching and geometry factors of the σ₋ scattering rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationModel {
    /// Rayleigh fraction γ of the scattered light.
    pub gamma: f64,
    /// Reduced matrix element of the σ₋ path.
    pub matrix_prefactor: f64,
    /// Relative weight of π emission into the detector.
    pub angular_pi_factor: f64,
}

impl PolarizationModel {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(PolarizationModel {
            gamma,
            matrix_prefactor: 1.0 / 3.0,
            angular_pi_factor: 2.0,
        })
    }

    /// Sodium D2 values, γ = 1/3.
    pub fn sodium_d2() -> Self {
        PolarizationModel::new(1.0 / 3.0).expect("γ = 1/3 is valid")
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return domain(format!("branching ratio must lie in [0, 1], got {gamma}"));
    }
    Ok(())
}

/// R₋ = c (γηR + a(1-γ)R): only the Rayleigh branch is Bose enhanced.
pub fn rate_sigma_minus(eta: f64, rate: f64, model: &PolarizationModel) -> f64 {
    let g = model.gamma;
    model.matrix_prefactor * (g * eta * rate + model.angular_pi_factor * (1.0 - g) * rate)
}

/// σ₋ enhancement (γη + 2(1-γ))/(2 - γ); (4 + η)/5 at γ = 1/3.
pub fn sigma_minus_enhancement(eta: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok((gamma * eta + 2.0 * (1.0 - gamma)) / (2.0 - gamma))
}

/// One σ₊/σ₋ observation: the σ₊ enhancement, the observed σ₋ enhancement and its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSample {
    pub eta: f64,
    pub observed: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFit {
    pub gamma: f64,
    pub stderr: f64,
    pub chi2: f64,
    pub dof: usize,
}

/// Weighted least-squares γ from σ₋ enhancements.
///
/// The enhancement is affine in η: E - 1 = b(η - 1) with b = γ/(2 - γ).
/// b is fitted linearly, mapped back by γ = 2b/(1 + b), and its standard
/// error (scaled by the reduced χ²) is propagated through that map.
pub fn fit_gamma(samples: &[GammaSample]) -> Result<GammaFit> {
    if samples.len() < 2 {
        return domain("fit_gamma needs at least 2 points");
    }
    if samples
        .iter()
        .any(|s| !(s.weight >= 0.0) || !s.eta.is_finite() || !s.observed.is_finite())
    {
        return domain("weights must be >= 0 and data finite");
    }
    let first = samples[0].eta;
    if samples.iter().all(|s| s.eta == first) {
        return Err(Error::DegenerateFit(
            "all η values are equal; γ is not identifiable".into(),
        ));
    }
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for s in samples {
        let x = s.eta - 1.0;
        sxx += s.weight * x * x;
        sxy += s.weight * x * (s.observed - 1.0);
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit("no weighted leverage on γ".into()));
    }
    let b = sxy / sxx;
    let chi2: f64 = samples
        .iter()
        .map(|s| {
            let r = s.observed - 1.0 - b * (s.eta - 1.0);
            s.weight * r * r
        })
        .sum();
    let dof = samples.len() - 1;
    let b_err = (chi2 / dof as f64 / sxx).sqrt();
    Ok(GammaFit {
        gamma: 2.0 * b / (1.0 + b),
        stderr: 2.0 * b_err / (1.0 + b).powi(2),
        chi2,
        dof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn rate_examples() {
        let m = PolarizationModel::sodium_d2();
        assert!((rate_sigma_minus(1.0, 1.0, &m) - 5.0 / 9.0).abs() < 1e-15);
        assert!((rate_sigma_minus(2.0, 1.0, &m) - 2.0 / 3.0).abs() < 1e-15);
        let two_level = PolarizationModel::new(1.0).unwrap();
        assert!((rate_sigma_minus(3.7, 1.0, &two_level) - 3.7 / 3.0).abs() < 1e-15);
        let r = rate_sigma_minus(2.0, 1.0, &m) / rate_sigma_minus(1.0, 1.0, &m);
        assert!((r - 1.2).abs() < 1e-14);
    }

    #[test]
    fn enhancement_examples() {
        for eta in [1.0, 1.5, 2.0, 3.0] {
            let v = sigma_minus_enhancement(eta, 1.0 / 3.0).unwrap();
            assert!((v - (4.0 + eta) / 5.0).abs() < 1e-12);
            assert_eq!(sigma_minus_enhancement(eta, 0.0).unwrap(), 1.0);
        }
        assert!(sigma_minus_enhancement(2.0, 1.2).is_err());
    }

    #[test]
    fn noiseless_recovery() {
        let samples: Vec<_> = (0..8)
            .map(|i| {
                let eta = 1.0 + 0.3 * i as f64;
                GammaSample {
                    eta,
                    observed: sigma_minus_enhancement(eta, 1.0 / 3.0).unwrap(),
                    weight: 1.0,
                }
            })
            .collect();
        let fit = fit_gamma(&samples).unwrap();
        assert!((fit.gamma - 1.0 / 3.0).abs() < 1e-14);
        assert!(fit.chi2 < 1e-25);
    }

    #[test]
    fn degenerate_inputs() {
        let s = GammaSample {
            eta: 1.5,
            observed: 1.1,
            weight: 1.0,
        };
        assert!(matches!(fit_gamma(&[s, s]), Err(Error::DegenerateFit(_))));
        assert!(fit_gamma(&[s]).is_err());
    }

    #[test]
    fn noisy_recovery_within_three_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut inside = 0;
        let trials = 1000;
        for _ in 0..trials {
            let samples: Vec<_> = (0..12)
                .map(|i| {
                    let eta = 1.0 + 0.25 * i as f64;
                    let clean = sigma_minus_enhancement(eta, 1.0 / 3.0).unwrap();
                    let noise = Normal::new(0.0, 0.2 * clean).unwrap();
                    GammaSample {
                        eta,
                        observed: clean + noise.sample(&mut rng),
                        weight: 1.0,
                    }
                })
                .collect();
            let fit = fit_gamma(&samples).unwrap();
            if (fit.gamma - 1.0 / 3.0).abs() <= 3.0 * fit.stderr {
                inside += 1;
            }
        }
        assert!(inside as f64 / trials as f64 > 0.95, "{inside}");
    }

    proptest! {
        #[test]
        fn sigma_minus_never_exceeds_sigma_plus(eta in 1.0f64..50.0, gamma in 0.0f64..=1.0) {
            prop_assert!(sigma_minus_enhancement(eta, gamma).unwrap() <= eta + 1e-12);
        }

        #[test]
        fn affine_in_eta(eta in 0.0f64..10.0, gamma in 0.0f64..=1.0) {
            let h = 0.5;
            let slope = (sigma_minus_enhancement(eta + h, gamma).unwrap()
                - sigma_minus_enhancement(eta, gamma).unwrap()) / h;
            prop_assert!((slope - gamma / (2.0 - gamma)).abs() < 1e-12);
        }

        #[test]
        fn rate_homogeneous(eta in 0.0f64..10.0, r in 0.0f64..100.0, k in 0.0f64..10.0, gamma in 0.0f64..=1.0) {
            let m = PolarizationModel::new(gamma).unwrap();
            let a = rate_sigma_minus(eta, k * r, &m);
            let b = k * rate_sigma_minus(eta, r, &m);
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
