//! Density profiles for external plotting.

use bosescat_core::interact::{profile, temperature_for_condensate_fraction, ProfileModel};
use rayon::prelude::*;

use crate::error::{config, CliError, CliResult};
use crate::output::{fmt_f64, preamble, Table};
use crate::scenario::Scenario;

pub const COLUMNS: &[&str] = &["model", "r_um", "n_total_cm3", "n_bec_cm3", "n_thermal_cm3"];

const M3_TO_CM3: f64 = 1e-6;

pub fn emit_profile(s: &Scenario, threads: usize) -> CliResult<Table> {
    let spec = *s.require_interaction()?;
    if s.profile_t.is_none() && s.profile_f.is_none() {
        return config("profile_t: give profile_t (in units of the ideal T_c) or profile_f");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    let profiles = pool.install(|| {
        s.profile_models
            .par_iter()
            .map(|&m| -> CliResult<_> {
                let temperature = match (s.profile_t, s.profile_f) {
                    (Some(t), _) => t * spec.ideal_tc(),
                    (None, Some(f)) => temperature_for_condensate_fraction(m, f, &spec)
                        .map_err(|e| CliError::Numerical(format!("{}: {e}", m.name())))?,
                    _ => unreachable!(),
                };
                profile(m, temperature, &spec).map_err(|e| CliError::Numerical(format!("{}: {e}", m.name())))
            })
            .collect::<Vec<_>>()
    });
    let mut comments = preamble("profile", &s.echo);
    let mut rows = Vec::new();
    for p in profiles {
        let p = p?;
        let name = p.model.name();
        comments.push(format!(
            "block {name}: temperature_K = {}, mu_J = {}, condensate_fraction = {}, integrated_atoms = {}",
            fmt_f64(p.temperature),
            fmt_f64(p.mu),
            fmt_f64(p.condensate_fraction()),
            fmt_f64(p.atom_number())
        ));
        for i in 0..p.r_grid.len() {
            rows.push(vec![
                name.to_string(),
                fmt_f64(p.r_grid[i] * 1e6),
                fmt_f64(p.n_total[i] * M3_TO_CM3),
                fmt_f64(p.n_bec[i] * M3_TO_CM3),
                fmt_f64(p.n_thermal[i] * M3_TO_CM3),
            ]);
        }
    }
    let mut t = Table::new(comments, COLUMNS);
    t.rows = rows;
    Ok(t)
}

/// The model names accepted in `profile_models`.
pub fn model_names() -> [&'static str; 3] {
    [
        ProfileModel::Ideal.name(),
        ProfileModel::SemiIdeal.name(),
        ProfileModel::HartreeFock.name(),
    ]
}
