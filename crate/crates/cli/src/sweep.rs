//! Parameter sweeps of S(q).

use bosescat_core::ideal::{structure_factor_with, EnhancementResult, GasState, KernelTolerance};
use bosescat_core::interact::{
    model_critical_temperature, semi_ideal_condensate_fraction, structure_factor_interacting,
    temperature_for_condensate_fraction, InteractingModel, ProfileModel,
};
use bosescat_core::trap::Statistics;
use rayon::prelude::*;

use crate::error::{config, CliResult};
use crate::output::{fmt_f64, preamble, Table};
use crate::scenario::{Model, Scenario, SweepVariable, TReference};

pub const COLUMNS: &[&str] = &[
    "sweep_value",
    "t",
    "kappa",
    "f",
    "s",
    "term_single",
    "term_bec_thermal",
    "term_thermal_thermal",
    "overlap_factor",
    "pair_correlation_factor",
    "error",
];

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub value: f64,
    pub t: f64,
    pub kappa: f64,
    pub f: f64,
    pub result: Result<EnhancementResult, bosescat_core::Error>,
}

impl Row {
    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            fmt_f64(self.value),
            fmt_f64(self.t),
            fmt_f64(self.kappa),
            fmt_f64(self.f),
        ];
        match &self.result {
            Ok(r) => {
                v.extend(
                    [
                        r.s,
                        r.term_single,
                        r.term_bec_thermal,
                        r.term_thermal_thermal,
                        r.overlap_factor,
                        r.pair_correlation_factor,
                    ]
                    .map(fmt_f64),
                );
                v.push(String::new());
            }
            Err(e) => {
                v.extend(std::iter::repeat_n("NaN".to_string(), 6));
                v.push(e.code().to_string());
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub comments: Vec<String>,
    pub rows: Vec<Row>,
}

impl SweepOutput {
    pub fn table(&self) -> Table {
        let mut t = Table::new(self.comments.clone(), COLUMNS);
        t.rows = self.rows.iter().map(Row::fields).collect();
        t
    }

    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.result.is_err())
    }
}

struct Context {
    /// Temperature that t multiplies, for interacting models.
    t_ref: f64,
    tol: KernelTolerance,
}

fn evaluate(s: &Scenario, ctx: &Context, value: f64) -> Row {
    let axis = s.sweep.expect("sweep present");
    let (mut t, kappa, f_req) = match axis.variable {
        SweepVariable::T => (value, s.kappa.unwrap_or(0.0), None),
        SweepVariable::Kappa => (s.t.unwrap_or(1.0), value, None),
        SweepVariable::F => (f64::NAN, s.kappa.unwrap_or(0.0), Some(value)),
    };
    let mut f = f64::NAN;
    let result = (|| -> Result<EnhancementResult, bosescat_core::Error> {
        let recoil = bosescat_core::trap::RecoilSpec::new(kappa, s.statistics)?;
        match s.model {
            Model::Ideal => {
                if let Some(fr) = f_req {
                    t = (1.0 - fr).powf(1.0 / (1.0 + s.x));
                }
                let state = match s.statistics {
                    Statistics::Bose => GasState::ideal_bose(t, s.x, s.n_atoms)?,
                    Statistics::Fermi => GasState::ideal_fermi(t, s.x, s.n_atoms)?,
                };
                f = state.f;
                structure_factor_with(&state, &recoil, &ctx.tol)
            }
            Model::Interacting(m) => {
                let spec = s.interaction.as_ref().expect("validated");
                let temperature = match f_req {
                    Some(fr) => {
                        let tt = temperature_for_condensate_fraction(ProfileModel::SemiIdeal, fr, spec)?;
                        t = tt / ctx.t_ref;
                        tt
                    }
                    None => t * ctx.t_ref,
                };
                f = if m == InteractingModel::SemiIdealBelowTc {
                    semi_ideal_condensate_fraction(temperature, spec)?
                } else {
                    0.0
                };
                structure_factor_interacting(temperature, spec, &recoil, m)
            }
        }
    })();
    Row {
        value,
        t,
        kappa,
        f,
        result,
    }
}

/// Evaluate every sweep point on `threads` workers; rows keep sweep order.
pub fn run_sweep(s: &Scenario, threads: usize, rel_tol: Option<f64>) -> CliResult<SweepOutput> {
    let Some(axis) = s.sweep else {
        return config("sweep: required for the sweep subcommand");
    };
    let tol = match rel_tol {
        None => KernelTolerance::default(),
        Some(r) if r > 0.0 && r < 1.0 => KernelTolerance::with_rel(r),
        Some(r) => return config(format!("--tol: must lie in (0, 1), got {r}")),
    };
    let t_ref = match (s.model, s.t_reference) {
        (Model::Ideal, _) => 1.0,
        (Model::Interacting(m), reference) => {
            let spec = s.require_interaction()?;
            let tm = match m {
                InteractingModel::SemiIdealBelowTc => ProfileModel::SemiIdeal,
                _ => ProfileModel::HartreeFock,
            };
            match reference {
                TReference::Ideal => spec.ideal_tc(),
                TReference::Model => model_critical_temperature(tm, spec)?,
            }
        }
    };
    let ctx = Context { t_ref, tol };
    let values = axis.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::error::CliError::Config(format!("--threads: {e}")))?;
    let rows: Vec<Row> = pool.install(|| values.par_iter().map(|&v| evaluate(s, &ctx, v)).collect());
    let mut comments = preamble("sweep", &s.echo);
    comments.push(format!("model = {}", s.model.name()));
    comments.push(format!("x = {}", fmt_f64(s.x)));
    if let Model::Interacting(_) = s.model {
        comments.push(format!("t_reference_K = {}", fmt_f64(t_ref)));
    }
    Ok(SweepOutput { comments, rows })
}
