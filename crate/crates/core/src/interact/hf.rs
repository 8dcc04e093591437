//! Local Hartree-Fock equations of a homogeneous Bose gas.
//!
//! With ν = nλ³, τ = βg/λ³ and m = βμ the pair
//! n = n₀ + g_{3/2}(e^{β(μ-2gn)})/λ³, μ = 2gn - gn₀
//! has a thermal branch ν = g_{3/2}(e^{m-2τν}) (n₀ = 0) and a condensed
//! branch u + 2τ g_{3/2}(e^{-u}) = m with u = βgn₀.

use super::spec::InteractionSpec;
use crate::constants::K_B;
use crate::error::{domain, Error, Result};
use crate::numerics::{find_root, fixed_point, Tolerance};
use crate::specfun::{zeta, BoseFunction};

/// Which solution to return where both branches exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchRule {
    #[default]
    PreferCondensed,
    ThermalOnly,
    /// Report `AmbiguousBranch` instead of choosing.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Thermal,
    Condensed,
}

/// Local solution at one chemical potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HfLocal {
    /// Total density (m⁻³).
    pub n: f64,
    pub n0: f64,
    pub n_thermal: f64,
    /// Effective single-particle gap 2gn - μ (J), zero for an ideal condensate.
    pub gap: f64,
    pub branch: Branch,
    /// Largest relative residual of the two defining equations.
    pub residual: f64,
}

const FIXED_POINT_DAMPING: f64 = 0.3;
const RESIDUAL_LIMIT: f64 = 1e-8;

/// Reusable solver at fixed temperature.
#[derive(Debug, Clone)]
pub struct HfSolver {
    beta: f64,
    lambda3: f64,
    g: f64,
    tau: f64,
    rule: BranchRule,
    zeta32: f64,
    /// Onset of the condensed branch in m = βμ (infinite when g = 0).
    m_onset: f64,
    u_star: f64,
    g32: BoseFunction,
    g12: BoseFunction,
}

impl HfSolver {
    pub fn new(temperature: f64, spec: &InteractionSpec, rule: BranchRule) -> Result<Self> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return domain(format!("temperature must be positive, got {temperature}"));
        }
        let beta = 1.0 / (K_B * temperature);
        let lambda3 = spec.thermal_wavelength(temperature).powi(3);
        let g = spec.g();
        let tau = beta * g / lambda3;
        let g32 = BoseFunction::new(1.5);
        let g12 = BoseFunction::new(0.5);
        let zeta32 = zeta(1.5)?;
        let (u_star, m_onset) = if tau > 0.0 {
            let tol = Tolerance::new(1e-300, 1e-14, 300)?;
            let f = |u: f64| 2.0 * tau * g12.eval_mu(-u).unwrap_or(f64::NAN) - 1.0;
            let mut hi = 1.0;
            while f(hi) > 0.0 {
                hi *= 2.0;
            }
            let mut lo = hi.min(1.0);
            while f(lo) < 0.0 {
                lo *= 1e-4;
            }
            let u = find_root(f, lo, hi, &tol)?;
            (u, u + 2.0 * tau * g32.eval_mu(-u)?)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        Ok(HfSolver {
            beta,
            lambda3,
            g,
            tau,
            rule,
            zeta32,
            m_onset,
            u_star,
            g32,
            g12,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// βg/λ³.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Smallest local μ at which a condensed solution exists.
    pub fn condensation_onset(&self) -> f64 {
        self.m_onset / self.beta
    }

    /// Largest local μ at which the thermal branch exists.
    pub fn thermal_limit(&self) -> f64 {
        if self.tau > 0.0 {
            2.0 * self.tau * self.zeta32 / self.beta
        } else {
            0.0
        }
    }

    pub fn solve(&self, mu: f64) -> Result<HfLocal> {
        if mu.is_nan() {
            return domain("local chemical potential is NaN");
        }
        let m = self.beta * mu;
        let thermal_ok = m <= self.thermal_limit() * self.beta;
        let condensed_ok = self.rule != BranchRule::ThermalOnly && m >= self.m_onset;
        if self.tau == 0.0 && m > 0.0 {
            return domain(format!("ideal gas needs μ <= 0, got βμ = {m}"));
        }
        match (thermal_ok, condensed_ok) {
            (true, true) if self.rule == BranchRule::Strict => Err(Error::AmbiguousBranch { mu }),
            (_, true) => self.condensed(m),
            (true, false) => self.thermal(m),
            (false, false) => domain(format!("no Hartree-Fock solution at βμ = {m} under {:?}", self.rule)),
        }
    }

    /// Solve on a given branch; a condensed request below onset returns the onset state.
    pub fn solve_on(&self, mu: f64, branch: Branch) -> Result<HfLocal> {
        let m = self.beta * mu;
        match branch {
            Branch::Condensed if self.tau > 0.0 => self.condensed(m),
            Branch::Condensed => domain("no condensed branch without interactions"),
            Branch::Thermal if m <= 2.0 * self.tau * self.zeta32 => self.thermal(m),
            Branch::Thermal => domain(format!("no thermal branch at βμ = {m}")),
        }
    }

    fn condensed(&self, m: f64) -> Result<HfLocal> {
        let m = m.max(self.m_onset);
        let tau = self.tau;
        let h = |u: f64| u + 2.0 * tau * self.g32.eval_mu(-u).unwrap_or(f64::NAN) - m;
        let u = if m <= self.m_onset {
            self.u_star
        } else {
            let tol = Tolerance::new(1e-300, 1e-15, 300)?;
            find_root(h, self.u_star, m, &tol)?
        };
        let nu_th = self.g32.eval_mu(-u)?;
        let nu0 = u / tau;
        self.finish(m, nu0, nu_th, Branch::Condensed)
    }

    fn thermal(&self, m: f64) -> Result<HfLocal> {
        let tau = self.tau;
        let map = |nu: f64| {
            let e = m - 2.0 * tau * nu;
            if e > 0.0 {
                f64::NAN
            } else {
                self.g32.eval_mu(e).unwrap_or(f64::NAN)
            }
        };
        let start = self.g32.eval_mu(m.min(0.0))?;
        let fp_tol = Tolerance::new((1e-13 * start).max(f64::MIN_POSITIVE), 1e-13, 2000)?;
        let nu = match fixed_point(|x| vec![map(x[0])], &[start], FIXED_POINT_DAMPING, &fp_tol) {
            Ok(v) => v[0],
            Err(_) => {
                let lo = (m / (2.0 * tau)).max(0.0);
                let hi = self.zeta32.max(lo);
                let tol = Tolerance::new(1e-300, 1e-15, 300)?;
                find_root(|nu| nu - map(nu), lo, hi, &tol)?
            }
        };
        self.finish(m, 0.0, nu, Branch::Thermal)
    }

    fn finish(&self, m: f64, nu0: f64, nu_th: f64, branch: Branch) -> Result<HfLocal> {
        let nu = nu0 + nu_th;
        let tau = self.tau;
        let e = (m - 2.0 * tau * nu).min(0.0);
        let r1 = (nu - nu0 - self.g32.eval_mu(e)?).abs() / nu.max(f64::MIN_POSITIVE);
        // μ = 2gn - gn₀ only binds on the condensed branch.
        let r2 = match branch {
            Branch::Condensed => (m - (2.0 * tau * nu - tau * nu0)).abs() / m.abs().max(1.0),
            Branch::Thermal => 0.0,
        };
        let residual = r1.max(r2);
        if !(residual < RESIDUAL_LIMIT) {
            return Err(Error::NonConvergence {
                what: "Hartree-Fock local solve",
                iterations: 0,
                residual,
            });
        }
        let gap = (2.0 * tau * nu - m).max(0.0) / self.beta;
        Ok(HfLocal {
            n: nu / self.lambda3,
            n0: nu0 / self.lambda3,
            n_thermal: nu_th / self.lambda3,
            gap: if branch == Branch::Condensed {
                self.g * nu0 / self.lambda3
            } else {
                gap
            },
            branch,
            residual,
        })
    }

    /// Slope 2τ g_{1/2} of the thermal map; below 1 the fixed point is attracting.
    pub fn thermal_contraction(&self, mu: f64) -> Result<f64> {
        let s = self.thermal(self.beta * mu)?;
        let e = self.beta * mu - 2.0 * self.tau * s.n * self.lambda3;
        Ok(2.0 * self.tau * self.g12.eval_mu(e.min(0.0))?)
    }
}

/// Local HF densities (n, n₀) at chemical potential `mu` under the default branch rule.
pub fn hf_local_solve(mu: f64, temperature: f64, spec: &InteractionSpec) -> Result<HfLocal> {
    HfSolver::new(temperature, spec, BranchRule::default())?.solve(mu)
}
