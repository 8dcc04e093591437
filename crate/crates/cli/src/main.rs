use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bosescat_cli::checks::{classify, parse_power, selftest};
use bosescat_cli::fit::{fit_scale, read_curve, read_data};
use bosescat_cli::output::{fmt_f64, preamble, Table};
use bosescat_cli::polarization::{read_samples, report, GammaChoice};
use bosescat_cli::profile::emit_profile;
use bosescat_cli::scenario;
use bosescat_cli::sweep::run_sweep;
use bosescat_cli::CliResult;
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "bosescat",
    version,
    about = "Bose-enhanced light scattering in trapped gases"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Relative tolerance of the ideal-gas quadrature.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S over the sweep axis of a scenario file.
    Sweep { scenario: PathBuf },
    /// Emit density profiles for the models named in a scenario file.
    Profile { scenario: PathBuf },
    /// Fit an overall scale of a sweep curve to data (columns t, signal, sigma).
    Fit {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// Curve column compared with the signal.
        #[arg(long, default_value = "s")]
        column: String,
    },
    /// σ₋ prediction from a σ₊ sweep curve.
    Polarization {
        #[arg(long)]
        curve: PathBuf,
        /// Rayleigh branching ratio, or `fit` to estimate it from --data.
        #[arg(long, default_value = "0.3333333333333333")]
        gamma: GammaChoice,
        /// Columns eta, observed, sigma.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Curve column holding the σ₊ enhancement.
        #[arg(long, default_value = "s")]
        column: String,
    },
    /// Regime of a d-dimensional power-law trap.
    Classify {
        #[arg(long, default_value_t = 3)]
        dimension: u32,
        /// Trap power α, or `box`.
        #[arg(long, default_value = "2")]
        power: String,
    },
    /// Run the oracle-agreement suite.
    Selftest,
}

fn emit(table: &Table, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => table.write_to(std::fs::File::create(p)?),
        None => table.write_to(std::io::stdout().lock()),
    }
}

fn paint(code: &str, text: &str) -> String {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    let threads = cli.threads.unwrap_or(0);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Sweep { scenario: path } => {
            let s = scenario::load(&path)?;
            let result = run_sweep(&s, threads, cli.tol)?;
            emit(&result.table(), out)?;
            let failed = result.rows.iter().filter(|r| r.result.is_err()).count();
            if failed > 0 {
                eprintln!(
                    "{} {failed} of {} points failed; see the error column",
                    paint("33", "warning:"),
                    result.rows.len()
                );
            }
            Ok(if result.all_failed() { 2 } else { 0 })
        }
        Command::Profile { scenario: path } => {
            let s = scenario::load(&path)?;
            emit(&emit_profile(&s, threads)?, out)?;
            Ok(0)
        }
        Command::Fit { curve, data, column } => {
            let c = read_curve(&curve, "t", &column)?;
            let d = read_data(&data)?;
            let f = fit_scale(&c, &d)?;
            let mut t = Table::new(preamble("fit", &[]), &["scale", "chi2", "dof"]);
            t.rows.push(vec![fmt_f64(f.scale), fmt_f64(f.chi2), f.dof.to_string()]);
            emit(&t, out)?;
            Ok(0)
        }
        Command::Polarization {
            curve,
            gamma,
            data,
            column,
        } => {
            let c = read_curve(&curve, "sweep_value", &column)?;
            let samples = data.as_deref().map(read_samples).transpose()?;
            let (t, _) = report(&c, gamma, samples.as_deref())?;
            emit(&t, out)?;
            Ok(0)
        }
        Command::Classify { dimension, power } => {
            emit(&classify(dimension, parse_power(&power)?)?, out)?;
            Ok(0)
        }
        Command::Selftest => {
            let checks = selftest(threads)?;
            let mut all = true;
            let mut text = Vec::new();
            for c in &checks {
                all &= c.passed;
                let tag = if c.passed {
                    paint("32", "PASS")
                } else {
                    paint("31", "FAIL")
                };
                writeln!(text, "{tag} {}: {}", c.name, c.detail)?;
            }
            match out {
                Some(p) => std::fs::write(p, &text)?,
                None => std::io::stdout().write_all(&text)?,
            }
            Ok(if all { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{} {e}", paint("31", "error:"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
