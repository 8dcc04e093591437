//! Brute-force phase-space evaluation of S(q), independent of the reduced
//! (a, y) quadrature.

use super::state::GasState;
use super::structure::recoil_occupation;
use crate::error::{domain, Error, Result};
use crate::trap::{RecoilSpec, Statistics};

/// Midpoint-grid resolution per axis and energy cutoff (units of k_B T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    pub points: usize,
    pub cutoff: f64,
}

impl OracleGrid {
    pub fn new(points: usize) -> Self {
        OracleGrid { points, cutoff: 24.0 }
    }
}

/// S(q) from a midpoint sum over (r, p⊥, p∥) in a three-dimensional trap
/// U = r^α with α = 3/(x - 1/2); x = 1/2 is the box.
///
/// Energies are in units of k_B T_c with ε = p² and q = κ along p∥.
/// The condensate term below T_c is added analytically.
pub fn phase_space_oracle(state: &GasState, recoil: &RecoilSpec, grid: OracleGrid) -> Result<f64> {
    if grid.points < 32 {
        return domain(format!(
            "oracle grid needs at least 32 points per axis, got {}",
            grid.points
        ));
    }
    if state.statistics != recoil.statistics {
        return Err(Error::ModelMismatch(
            "gas state and recoil specify different statistics".into(),
        ));
    }
    let x = state.x;
    if x < 0.5 {
        return domain(format!("oracle geometry needs x >= 1/2, got {x}"));
    }
    let t = state.t;
    let eta = state.log_fugacity;
    let kappa = recoil.kappa;
    let sign = recoil.statistics.sign();
    let m = grid.points;
    let e_max = t * (grid.cutoff + eta.max(0.0));

    let occ = |e: f64| -> f64 {
        let w = e / t - eta;
        match recoil.statistics {
            Statistics::Bose => 1.0 / w.exp_m1(),
            Statistics::Fermi => 1.0 / (w.exp() + 1.0),
        }
    };

    // Radial potential energies and weights r² dr.
    let radial: Vec<(f64, f64)> = if x == 0.5 {
        vec![(0.0, 1.0)]
    } else {
        let alpha = 3.0 / (x - 0.5);
        let r_max = e_max.powf(1.0 / alpha);
        let h = r_max / m as f64;
        (0..m)
            .map(|i| {
                let r = (i as f64 + 0.5) * h;
                (r.powf(alpha), r * r * h)
            })
            .collect()
    };
    let p_max = e_max.sqrt();
    let h_perp = p_max / m as f64;
    let perp: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let p = (i as f64 + 0.5) * h_perp;
            (p * p, p * h_perp)
        })
        .collect();
    let lo = -p_max - kappa;
    let h_par = (p_max - lo) / m as f64;
    let par: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let p = lo + (i as f64 + 0.5) * h_par;
            (p * p, (p + kappa) * (p + kappa))
        })
        .collect();

    let mut num = 0.0;
    let mut den = 0.0;
    for &(u, wr) in &radial {
        for &(e_perp, wp) in &perp {
            let base = u + e_perp;
            let mut n_sum = 0.0;
            let mut nn_sum = 0.0;
            for &(e1, e2) in &par {
                let n1 = occ(base + e1);
                n_sum += n1;
                nn_sum += n1 * occ(base + e2);
            }
            num += wr * wp * nn_sum;
            den += wr * wp * n_sum;
        }
    }
    if !(den > 0.0) || !num.is_finite() {
        return Ok(1.0);
    }
    let mut s = 1.0 + sign * state.thermal_fraction() * num / den;
    if state.f > 0.0 {
        s += 2.0 * state.f * recoil_occupation(kappa, t);
    }
    Ok(s)
}
