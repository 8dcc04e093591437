//! Local-density profiles of a trapped gas for the ideal, semi-ideal and
//! Hartree-Fock models.

use std::f64::consts::PI;

use super::hf::{Branch, BranchRule, HfSolver};
use super::spec::InteractionSpec;
use crate::constants::K_B;
use crate::error::{domain, Error, Result};
use crate::ideal::log_fugacity;
use crate::numerics::{find_root, integrate_1d, Tolerance};
use crate::specfun::BoseFunction;
use crate::trap::RecoilSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileModel {
    Ideal,
    SemiIdeal,
    HartreeFock,
}

impl ProfileModel {
    pub fn name(self) -> &'static str {
        match self {
            ProfileModel::Ideal => "ideal",
            ProfileModel::SemiIdeal => "semi-ideal",
            ProfileModel::HartreeFock => "hartree-fock",
        }
    }
}

/// Grid and accuracy settings for [`profile_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    pub points: usize,
    /// Relative accuracy of the atom-number integrals and of μ.
    pub tol: Tolerance,
    pub rule: BranchRule,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            points: 600,
            tol: Tolerance::new(1e-300, 1e-9, 200).expect("static tolerance"),
            rule: BranchRule::PreferCondensed,
        }
    }
}

/// Radial densities on a geometric grid, normalized to N.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub r_grid: Vec<f64>,
    pub n_total: Vec<f64>,
    pub n_bec: Vec<f64>,
    pub n_thermal: Vec<f64>,
    /// Energy gap seen by a thermal atom at rest, U_eff(r) - μ (J).
    pub thermal_gap: Vec<f64>,
    pub model: ProfileModel,
    pub mu: f64,
    pub temperature: f64,
    pub n_atoms: f64,
    /// Condensed atoms from the continuum integral.
    pub condensed_atoms: f64,
}

/// Allowed deviation of the grid atom number from N.
pub const NORMALIZATION_TOLERANCE: f64 = 5e-3;

const ENERGY_SPAN: f64 = 20.0;

impl DensityProfile {
    /// 4π ∫ r² v(r) dr by the trapezoid rule on the profile grid.
    pub fn radial_integral(&self, values: &[f64]) -> f64 {
        radial_trapezoid(&self.r_grid, values)
    }

    pub fn atom_number(&self) -> f64 {
        self.radial_integral(&self.n_total)
    }

    pub fn condensate_fraction(&self) -> f64 {
        self.condensed_atoms / self.n_atoms
    }

    /// Largest downward step of n_bec between neighbouring grid points,
    /// relative to the peak condensate density.
    pub fn condensate_edge_jump(&self) -> f64 {
        let peak = self.n_bec.iter().cloned().fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        self.n_bec
            .windows(2)
            .map(|w| (w[0] - w[1]).max(0.0))
            .fold(0.0, f64::max)
            / peak
    }
}

fn radial_trapezoid(r: &[f64], v: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 1..r.len() {
        let (a, b) = (r[i - 1], r[i]);
        s += 0.5 * (b - a) * (a * a * v[i - 1] + b * b * v[i]);
    }
    4.0 * PI * s
}

/// Geometric grid on [0, r_max] whose last step is 200 times the first.
pub fn radial_grid(r_max: f64, points: usize) -> Vec<f64> {
    let m = (points.max(2) - 1) as f64;
    let s = 200f64.ln() / m;
    let denom = (s * m).exp_m1();
    (0..points.max(2))
        .map(|i| r_max * (s * i as f64).exp_m1() / denom)
        .collect()
}

fn insert_sorted(grid: &mut Vec<f64>, r: f64) -> usize {
    let i = grid.partition_point(|&x| x < r);
    grid.insert(i, r);
    i
}

fn check_options(opts: &ProfileOptions, temperature: f64) -> Result<()> {
    opts.tol.validate()?;
    if opts.points < 400 {
        return domain(format!("profiles need at least 400 grid points, got {}", opts.points));
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return domain(format!("temperature must be positive, got {temperature}"));
    }
    Ok(())
}

pub fn profile(model: ProfileModel, temperature: f64, spec: &InteractionSpec) -> Result<DensityProfile> {
    profile_with(model, temperature, spec, &ProfileOptions::default())
}

pub fn profile_with(
    model: ProfileModel,
    temperature: f64,
    spec: &InteractionSpec,
    opts: &ProfileOptions,
) -> Result<DensityProfile> {
    check_options(opts, temperature)?;
    let p = match model {
        ProfileModel::Ideal => ideal_profile(temperature, spec, opts, model)?,
        ProfileModel::SemiIdeal => semi_ideal_profile(temperature, spec, opts)?,
        ProfileModel::HartreeFock => hartree_fock_profile(temperature, spec, opts)?,
    };
    let reached = p.atom_number();
    if !((reached / p.n_atoms - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
        return Err(Error::NormalizationFailure {
            target: p.n_atoms,
            reached,
        });
    }
    Ok(p)
}

fn ideal_profile(
    temperature: f64,
    spec: &InteractionSpec,
    opts: &ProfileOptions,
    tag: ProfileModel,
) -> Result<DensityProfile> {
    let kt = K_B * temperature;
    let lam3 = spec.thermal_wavelength(temperature).powi(3);
    let t = temperature / spec.ideal_tc();
    let (mu, n0) = if t < 1.0 {
        (0.0, spec.n_atoms * (1.0 - t.powi(3)))
    } else if t == 1.0 {
        (0.0, 0.0)
    } else {
        (kt * log_fugacity(t, 2.0)?, 0.0)
    };
    let g32 = BoseFunction::new(1.5);
    let r = radial_grid(spec.radius_at(ENERGY_SPAN * kt), opts.points);
    let aho = spec.oscillator_length();
    let norm0 = n0 / (PI.powf(1.5) * aho.powi(3));
    let mut p = empty(tag, temperature, spec, mu, n0, r);
    for (i, &ri) in p.r_grid.iter().enumerate() {
        let gap = spec.potential(ri) - mu;
        p.n_thermal[i] = g32.eval_mu(-gap / kt)? / lam3;
        p.n_bec[i] = norm0 * (-(ri / aho).powi(2)).exp();
        p.thermal_gap[i] = gap;
    }
    p.fill_total();
    Ok(p)
}

fn empty(
    model: ProfileModel,
    temperature: f64,
    spec: &InteractionSpec,
    mu: f64,
    n0: f64,
    r: Vec<f64>,
) -> DensityProfile {
    let n = r.len();
    DensityProfile {
        r_grid: r,
        n_total: vec![0.0; n],
        n_bec: vec![0.0; n],
        n_thermal: vec![0.0; n],
        thermal_gap: vec![0.0; n],
        model,
        mu,
        temperature,
        n_atoms: spec.n_atoms,
        condensed_atoms: n0,
    }
}

impl DensityProfile {
    fn fill_total(&mut self) {
        for i in 0..self.r_grid.len() {
            self.n_total[i] = self.n_bec[i] + self.n_thermal[i];
        }
    }
}

/// Thermal atoms of the semi-ideal model for a Thomas-Fermi condensate at μ₀.
fn semi_ideal_thermal_atoms(mu0: f64, temperature: f64, spec: &InteractionSpec, tol: &Tolerance) -> Result<f64> {
    let kt = K_B * temperature;
    let lam3 = spec.thermal_wavelength(temperature).powi(3);
    let g32 = BoseFunction::new(1.5);
    let f = |r: f64| 4.0 * PI * r * r * g32.eval_mu(-(mu0 - spec.potential(r)).abs() / kt).unwrap_or(f64::NAN) / lam3;
    let r_tf = spec.radius_at(mu0);
    let r_max = spec.radius_at(mu0 + 2.0 * ENERGY_SPAN * kt);
    Ok(integrate_1d(f, 0.0, r_tf, tol)? + integrate_1d(f, r_tf, r_max, tol)?)
}

/// Self-consistent condensate fraction of the semi-ideal model.
pub fn semi_ideal_condensate_fraction(temperature: f64, spec: &InteractionSpec) -> Result<f64> {
    let tol = ProfileOptions::default().tol;
    let t = temperature / spec.ideal_tc();
    if t >= 1.0 {
        return Ok(0.0);
    }
    if spec.a == 0.0 {
        return Ok(1.0 - t.powi(3));
    }
    let n = spec.n_atoms;
    let balance = |f: f64| {
        let mu0 = spec.thomas_fermi_mu(f * n);
        semi_ideal_thermal_atoms(mu0, temperature, spec, &tol)
            .map(|nt| f * n + nt - n)
            .unwrap_or(f64::NAN)
    };
    let root_tol = Tolerance::new(1e-9 * n, 1e-12, 200)?;
    find_root(balance, 0.0, 1.0, &root_tol)
}

fn semi_ideal_profile(temperature: f64, spec: &InteractionSpec, opts: &ProfileOptions) -> Result<DensityProfile> {
    if spec.a == 0.0 || temperature >= spec.ideal_tc() {
        return ideal_profile(temperature, spec, opts, ProfileModel::SemiIdeal);
    }
    let f = semi_ideal_condensate_fraction(temperature, spec)?;
    let n0 = f * spec.n_atoms;
    let mu0 = spec.thomas_fermi_mu(n0);
    let kt = K_B * temperature;
    let lam3 = spec.thermal_wavelength(temperature).powi(3);
    let g = spec.g();
    let g32 = BoseFunction::new(1.5);
    let mut r = radial_grid(spec.radius_at(mu0 + ENERGY_SPAN * kt), opts.points);
    insert_sorted(&mut r, spec.radius_at(mu0));
    let mut p = empty(ProfileModel::SemiIdeal, temperature, spec, mu0, n0, r);
    for (i, &ri) in p.r_grid.iter().enumerate() {
        let d = mu0 - spec.potential(ri);
        p.n_bec[i] = (d / g).max(0.0);
        p.thermal_gap[i] = d.abs();
        p.n_thermal[i] = g32.eval_mu(-d.abs() / kt)? / lam3;
    }
    p.fill_total();
    Ok(p)
}

struct HfCloud<'a> {
    solver: HfSolver,
    spec: &'a InteractionSpec,
    kt: f64,
    tol: Tolerance,
}

impl HfCloud<'_> {
    /// Radius of the condensate edge at global μ (0 when no condensate).
    fn edge(&self, mu: f64, rule: BranchRule) -> f64 {
        if rule == BranchRule::ThermalOnly {
            return 0.0;
        }
        self.spec.radius_at(mu - self.solver.condensation_onset())
    }

    fn outer(&self, mu: f64) -> f64 {
        self.spec.radius_at(mu.max(0.0) + 2.0 * ENERGY_SPAN * self.kt)
    }

    /// (N, N₀) at global μ.
    fn atoms(&self, mu: f64, rule: BranchRule) -> Result<(f64, f64)> {
        let r_e = self.edge(mu, rule);
        let total = |r: f64| {
            4.0 * PI
                * r
                * r
                * self
                    .solver
                    .solve(mu - self.spec.potential(r))
                    .map(|s| s.n)
                    .unwrap_or(f64::NAN)
        };
        let cond = |r: f64| {
            4.0 * PI
                * r
                * r
                * self
                    .solver
                    .solve(mu - self.spec.potential(r))
                    .map(|s| s.n0)
                    .unwrap_or(f64::NAN)
        };
        let inner = integrate_1d(total, 0.0, r_e, &self.tol)?;
        let outer = integrate_1d(total, r_e, self.outer(mu), &self.tol)?;
        let n0 = integrate_1d(cond, 0.0, r_e, &self.tol)?;
        Ok((inner + outer, n0))
    }
}

fn hartree_fock_profile(temperature: f64, spec: &InteractionSpec, opts: &ProfileOptions) -> Result<DensityProfile> {
    let solver = HfSolver::new(temperature, spec, opts.rule)?;
    let kt = K_B * temperature;
    let cloud = HfCloud {
        solver: solver.clone(),
        spec,
        kt,
        tol: opts.tol,
    };
    let n = spec.n_atoms;
    let rule = opts.rule;
    let excess = |mu: f64| cloud.atoms(mu, rule).map(|(a, _)| a - n).unwrap_or(f64::NAN);
    let thermal_only = rule == BranchRule::ThermalOnly || solver.tau() == 0.0;
    let top = if thermal_only {
        solver.thermal_limit()
    } else {
        solver.condensation_onset()
    };
    let mut lo = top.min(0.0) - kt;
    while excess(lo) > 0.0 {
        lo -= 4.0 * kt;
        if lo < top - 400.0 * kt {
            return domain("could not bracket the global chemical potential from below");
        }
    }
    let mut hi = top;
    if rule == BranchRule::Strict {
        return Err(Error::AmbiguousBranch { mu: hi });
    }
    let mut step = kt;
    while excess(hi) < 0.0 {
        if thermal_only {
            let reached = cloud.atoms(hi, rule)?.0;
            return Err(Error::NormalizationFailure { target: n, reached });
        }
        lo = hi;
        hi += step;
        step *= 2.0;
        if step > 1e6 * kt {
            return domain("could not bracket the global chemical potential from above");
        }
    }
    let root_tol = Tolerance::new(1e-10 * n, opts.tol.rel_tol, 200)?;
    let mu = find_root(excess, lo, hi, &root_tol)?;
    let (_, n0) = cloud.atoms(mu, rule)?;

    let mut r = radial_grid(spec.radius_at(mu.max(0.0) + ENERGY_SPAN * kt), opts.points);
    let r_e = cloud.edge(mu, rule);
    let mut edge = None;
    if r_e > 0.0 {
        let i = insert_sorted(&mut r, r_e);
        r.insert(i, r_e);
        edge = Some(i);
    }
    let mut p = empty(ProfileModel::HartreeFock, temperature, spec, mu, n0, r);
    for i in 0..p.r_grid.len() {
        let local = mu - spec.potential(p.r_grid[i]);
        // The edge radius appears twice: condensed limit, then thermal limit.
        let s = match edge {
            Some(e) if i == e => solver.solve_on(local, Branch::Condensed)?,
            Some(e) if i == e + 1 => solver.solve_on(local, Branch::Thermal)?,
            _ => solver.solve(local)?,
        };
        p.n_bec[i] = s.n0;
        p.n_thermal[i] = s.n_thermal;
        p.thermal_gap[i] = s.gap;
    }
    p.fill_total();
    Ok(p)
}

/// Temperature at which a condensate first appears in `model`.
pub fn model_critical_temperature(model: ProfileModel, spec: &InteractionSpec) -> Result<f64> {
    let tc0 = spec.ideal_tc();
    if model != ProfileModel::HartreeFock || spec.a == 0.0 {
        return Ok(tc0);
    }
    let tol = ProfileOptions::default().tol;
    let n = spec.n_atoms;
    let excess = |t: f64| -> f64 {
        let run = || -> Result<f64> {
            let solver = HfSolver::new(t, spec, BranchRule::ThermalOnly)?;
            let onset = HfSolver::new(t, spec, BranchRule::PreferCondensed)?.condensation_onset();
            let cloud = HfCloud {
                solver,
                spec,
                kt: K_B * t,
                tol,
            };
            Ok(cloud.atoms(onset, BranchRule::ThermalOnly)?.0 - n)
        };
        run().unwrap_or(f64::NAN)
    };
    let t_tol = Tolerance::new(1e-300, 1e-10, 200)?;
    find_root(excess, 0.5 * tc0, 1.2 * tc0, &t_tol)
}

/// Temperature at which `model` holds the condensate fraction `f`.
pub fn temperature_for_condensate_fraction(model: ProfileModel, f: f64, spec: &InteractionSpec) -> Result<f64> {
    if !(f > 0.0 && f < 1.0) {
        return domain(format!("condensate fraction must lie in (0, 1), got {f}"));
    }
    let tc0 = spec.ideal_tc();
    match model {
        ProfileModel::Ideal => Ok(tc0 * (1.0 - f).cbrt()),
        ProfileModel::SemiIdeal => {
            let tol = Tolerance::new(1e-12, 1e-12, 200)?;
            find_root(
                |t| {
                    semi_ideal_condensate_fraction(t, spec)
                        .map(|v| v - f)
                        .unwrap_or(f64::NAN)
                },
                1e-3 * tc0,
                tc0,
                &tol,
            )
        }
        ProfileModel::HartreeFock => {
            let tc = model_critical_temperature(model, spec)?;
            let tol = Tolerance::new(1e-6, 1e-6, 100)?;
            let frac = |t: f64| {
                if t >= tc {
                    return -f;
                }
                profile(ProfileModel::HartreeFock, t, spec)
                    .map(|p| p.condensate_fraction() - f)
                    .unwrap_or(f64::NAN)
            };
            find_root(frac, 0.05 * tc, tc, &tol)
        }
    }
}

/// ∫ n₀(r) n_th^{int}(r, q) d³r / (N₀ n_th(0, q)), with the local thermal
/// occupation at the recoil momentum 1/(e^{β(E_q + Δ(r))} - 1).
pub fn overlap_reduction_factor(profile: &DensityProfile, recoil: &RecoilSpec, spec: &InteractionSpec) -> Result<f64> {
    let n0 = profile.radial_integral(&profile.n_bec);
    if !(n0 > 0.0) || !(profile.condensed_atoms > 0.0) {
        return domain("overlap factor needs a condensate; the profile is above T_c");
    }
    let beta = 1.0 / (K_B * profile.temperature);
    let eq = spec.recoil_energy(recoil.kappa);
    if !(eq > 0.0) {
        return domain("overlap factor needs a nonzero recoil");
    }
    let weighted: Vec<f64> = profile
        .n_bec
        .iter()
        .zip(&profile.thermal_gap)
        .map(|(nb, gap)| nb / (beta * (eq + gap)).exp_m1())
        .collect();
    let num = profile.radial_integral(&weighted);
    Ok(num / (n0 / (beta * eq).exp_m1()))
}
