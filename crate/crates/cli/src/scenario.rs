//! Scenario files: `key = value` lines or a flat JSON object.

use std::collections::BTreeMap;
use std::path::Path;

use bosescat_core::interact::{InteractingModel, InteractionSpec, ProfileModel};
use bosescat_core::trap::{dos_exponent, RecoilSpec, Statistics, TrapPower};

use crate::error::{config, CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

const KNOWN_KEYS: &[&str] = &[
    "schema_version",
    "trap",
    "dimension",
    "power",
    "statistics",
    "model",
    "kappa",
    "t",
    "sweep",
    "range",
    "points",
    "spacing",
    "n_atoms",
    "scattering_length_bohr",
    "trap_frequency_hz",
    "mass_amu",
    "t_reference",
    "profile_models",
    "profile_t",
    "profile_f",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Ideal,
    Interacting(InteractingModel),
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Ideal => "ideal",
            Model::Interacting(m) => m.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    T,
    Kappa,
    F,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::T => "t",
            SweepVariable::Kappa => "kappa",
            SweepVariable::F => "f",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let u = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.lo + u * (self.hi - self.lo),
                    Spacing::Log => (self.lo.ln() + u * (self.hi.ln() - self.lo.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Reference temperature for the reduced t of interacting models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TReference {
    /// Ideal-gas T_c of the trap.
    Ideal,
    /// The model's own transition temperature.
    Model,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub power: TrapPower,
    pub dimension: u32,
    /// Density-of-states exponent.
    pub x: f64,
    pub statistics: Statistics,
    pub model: Model,
    pub kappa: Option<f64>,
    pub t: Option<f64>,
    pub sweep: Option<SweepAxis>,
    pub n_atoms: f64,
    pub interaction: Option<InteractionSpec>,
    pub t_reference: TReference,
    pub profile_models: Vec<ProfileModel>,
    pub profile_t: Option<f64>,
    pub profile_f: Option<f64>,
    /// Raw key/value pairs in file order, for output headers.
    pub echo: Vec<(String, String)>,
}

impl Scenario {
    pub fn recoil(&self, kappa: f64) -> CliResult<RecoilSpec> {
        RecoilSpec::new(kappa, self.statistics).map_err(|e| CliError::Config(format!("kappa: {e}")))
    }

    pub fn require_interaction(&self) -> CliResult<&InteractionSpec> {
        self.interaction.as_ref().ok_or_else(|| {
            CliError::Config("scattering_length_bohr: required for interacting models and profiles".into())
        })
    }
}

pub fn load(path: &Path) -> CliResult<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

/// Parse either format; a leading `{` selects JSON.
pub fn parse(text: &str) -> CliResult<Scenario> {
    let pairs = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_lines(text)?
    };
    build(pairs)
}

fn parse_lines(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return config(format!("line {}: expected `key = value`, got `{}`", i + 1, raw.trim()));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_json(text: &str) -> CliResult<Vec<(String, String)>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid JSON scenario: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Config("JSON scenario must be an object".into()))?;
    let mut out = Vec::new();
    for (k, v) in obj {
        let s = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Array(items) => items
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(", "),
            other => return config(format!("{k}: unsupported JSON value {other}")),
        };
        out.push((k.clone(), s));
    }
    Ok(out)
}

fn number(key: &str, v: &str) -> CliResult<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: expected a number, got `{v}`")))?;
    if !x.is_finite() {
        return config(format!("{key}: must be finite"));
    }
    Ok(x)
}

fn positive(key: &str, v: &str) -> CliResult<f64> {
    let x = number(key, v)?;
    if !(x > 0.0) {
        return config(format!("{key}: must be positive, got {x}"));
    }
    Ok(x)
}

fn build(pairs: Vec<(String, String)>) -> CliResult<Scenario> {
    let mut map: BTreeMap<&str, &str> = BTreeMap::new();
    for (k, v) in &pairs {
        if !KNOWN_KEYS.contains(&k.as_str()) {
            return config(format!("{k}: unknown key"));
        }
        if map.insert(k.as_str(), v.as_str()).is_some() {
            return config(format!("{k}: given more than once"));
        }
    }
    let get = |k: &str| map.get(k).copied();

    match get("schema_version") {
        None => return config("schema_version: required"),
        Some(v) => {
            if v.parse::<u32>().ok() != Some(SCHEMA_VERSION) {
                return config(format!("schema_version: expected {SCHEMA_VERSION}, got `{v}`"));
            }
        }
    }

    let dimension = match get("dimension") {
        None => 3,
        Some(v) => v
            .parse::<u32>()
            .ok()
            .filter(|d| *d >= 1)
            .ok_or_else(|| CliError::Config(format!("dimension: expected an integer >= 1, got `{v}`")))?,
    };
    let power = match get("trap").unwrap_or("harmonic") {
        "harmonic" => {
            if get("power").is_some() {
                return config("power: only used with trap = power");
            }
            TrapPower::Finite(2.0)
        }
        "box" => TrapPower::Box,
        "power" => TrapPower::Finite(positive(
            "power",
            get("power").ok_or_else(|| CliError::Config("power: required when trap = power".into()))?,
        )?),
        other => return config(format!("trap: expected harmonic, box or power, got `{other}`")),
    };
    let x = dos_exponent(dimension, power).map_err(|e| CliError::Config(format!("trap: {e}")))?;

    let statistics = match get("statistics").unwrap_or("bose") {
        "bose" => Statistics::Bose,
        "fermi" => Statistics::Fermi,
        other => return config(format!("statistics: expected bose or fermi, got `{other}`")),
    };
    let model = match get("model").unwrap_or("ideal") {
        "ideal" => Model::Ideal,
        "mf-only" => Model::Interacting(InteractingModel::MFOnly),
        "mf-plus-overall-suppression" => Model::Interacting(InteractingModel::MFPlusOverallSuppression),
        "full-interacting" => Model::Interacting(InteractingModel::FullInteracting),
        "semi-ideal-below-tc" => Model::Interacting(InteractingModel::SemiIdealBelowTc),
        other => return config(format!("model: unknown model `{other}`")),
    };

    let kappa = get("kappa").map(|v| number("kappa", v)).transpose()?;
    if let Some(k) = kappa {
        if k < 0.0 {
            return config(format!("kappa: must be >= 0, got {k}"));
        }
    }
    let t = get("t").map(|v| positive("t", v)).transpose()?;
    let n_atoms = get("n_atoms")
        .map(|v| positive("n_atoms", v))
        .transpose()?
        .unwrap_or(4e5);
    if n_atoms < 1.0 {
        return config("n_atoms: must be >= 1");
    }

    let sweep = match get("sweep") {
        None => {
            for k in ["range", "points", "spacing"] {
                if get(k).is_some() {
                    return config(format!("{k}: only used together with sweep"));
                }
            }
            None
        }
        Some(var) => {
            let variable = match var {
                "t" => SweepVariable::T,
                "kappa" => SweepVariable::Kappa,
                "f" => SweepVariable::F,
                other => return config(format!("sweep: expected t, kappa or f, got `{other}`")),
            };
            let range = get("range").ok_or_else(|| CliError::Config("range: required with sweep".into()))?;
            let parts: Vec<&str> = range.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return config(format!("range: expected `lo, hi`, got `{range}`"));
            }
            let lo = positive("range", parts[0])?;
            let hi = positive("range", parts[1])?;
            if !(hi > lo) {
                return config(format!("range: must be ordered lo < hi, got {lo}, {hi}"));
            }
            if variable == SweepVariable::F && hi >= 1.0 {
                return config("range: condensate fraction must stay below 1");
            }
            let points = match get("points") {
                None => return config("points: required with sweep"),
                Some(v) => v
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n >= 2)
                    .ok_or_else(|| CliError::Config(format!("points: expected an integer >= 2, got `{v}`")))?,
            };
            let spacing = match get("spacing").unwrap_or("linear") {
                "linear" => Spacing::Linear,
                "log" => Spacing::Log,
                other => return config(format!("spacing: expected linear or log, got `{other}`")),
            };
            Some(SweepAxis {
                variable,
                lo,
                hi,
                points,
                spacing,
            })
        }
    };

    let interaction = match get("scattering_length_bohr") {
        None => {
            for k in ["trap_frequency_hz", "mass_amu"] {
                if get(k).is_some() {
                    return config(format!("{k}: only used together with scattering_length_bohr"));
                }
            }
            None
        }
        Some(a) => {
            let a = number("scattering_length_bohr", a)?;
            if a < 0.0 {
                return config("scattering_length_bohr: must be >= 0");
            }
            let hz = positive(
                "trap_frequency_hz",
                get("trap_frequency_hz").ok_or_else(|| {
                    CliError::Config("trap_frequency_hz: required with scattering_length_bohr".into())
                })?,
            )?;
            let mass = match get("mass_amu") {
                None => bosescat_core::constants::SODIUM_MASS,
                Some(v) => positive("mass_amu", v)? * bosescat_core::constants::ATOMIC_MASS_UNIT,
            };
            Some(
                InteractionSpec::new(
                    a * bosescat_core::constants::BOHR_RADIUS,
                    mass,
                    2.0 * std::f64::consts::PI * hz,
                    n_atoms,
                )
                .map_err(|e| CliError::Config(format!("interaction: {e}")))?,
            )
        }
    };

    let t_reference = match get("t_reference").unwrap_or("ideal") {
        "ideal" => TReference::Ideal,
        "model" => TReference::Model,
        other => return config(format!("t_reference: expected ideal or model, got `{other}`")),
    };

    let profile_models = match get("profile_models") {
        None => vec![ProfileModel::Ideal, ProfileModel::SemiIdeal, ProfileModel::HartreeFock],
        Some(v) => v
            .split(',')
            .map(str::trim)
            .map(|m| match m {
                "ideal" => Ok(ProfileModel::Ideal),
                "semi-ideal" => Ok(ProfileModel::SemiIdeal),
                "hartree-fock" => Ok(ProfileModel::HartreeFock),
                other => config(format!("profile_models: unknown profile model `{other}`")),
            })
            .collect::<CliResult<Vec<_>>>()?,
    };
    let profile_t = get("profile_t").map(|v| positive("profile_t", v)).transpose()?;
    let profile_f = get("profile_f").map(|v| positive("profile_f", v)).transpose()?;
    if profile_t.is_some() && profile_f.is_some() {
        return config("profile_f: give either profile_t or profile_f, not both");
    }
    if let Some(f) = profile_f {
        if f >= 1.0 {
            return config("profile_f: must lie in (0, 1)");
        }
    }

    if let Model::Interacting(_) = model {
        if interaction.is_none() {
            return config("scattering_length_bohr: required for interacting models");
        }
        if statistics != Statistics::Bose || power != TrapPower::Finite(2.0) || dimension != 3 {
            return config("model: interacting models need a 3D harmonic trap of bosons");
        }
    }
    if let Some(ax) = &sweep {
        if ax.variable == SweepVariable::F {
            let ok = match model {
                Model::Ideal => statistics == Statistics::Bose && x > 0.0,
                Model::Interacting(m) => m == InteractingModel::SemiIdealBelowTc,
            };
            if !ok {
                return config("sweep: f sweeps need a condensing Bose gas with the ideal or semi-ideal model");
            }
        }
        if ax.variable != SweepVariable::Kappa && kappa.is_none() {
            return config("kappa: required unless sweeping kappa");
        }
        if ax.variable != SweepVariable::T && ax.variable != SweepVariable::F && t.is_none() {
            return config("t: required when sweeping kappa");
        }
    }

    Ok(Scenario {
        power,
        dimension,
        x,
        statistics,
        model,
        kappa,
        t,
        sweep,
        n_atoms,
        interaction,
        t_reference,
        profile_models,
        profile_t,
        profile_f,
        echo: pairs,
    })
}
