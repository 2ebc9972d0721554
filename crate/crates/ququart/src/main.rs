//! Thin command-line front end: clap parsing on the outside,
//! [`ququart::harness::run`] on the inside.
//!
//! Every subcommand prints a JSON report to stdout and exits with 0 when its
//! check passes, 1 when it fails, and 2 on usage or input errors. Domain
//! errors print one machine-parseable line to stderr:
//! `error: <code>: <message>`. Relative artifact paths resolve under
//! `$QUQUART_OUT_DIR` when that variable is set.

use clap::{Parser, Subcommand};
use ququart::harness::{error_code, run, HarnessError, RunReport, Scenario, ScenarioConfig};
use ququart::state::BlochVector;
use serde_json::json;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ququart",
    version,
    about = "Pulse-level toolkit for a four-level register operated as two qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a named gate into its exact two-level x-pulse schedule.
    Compile {
        /// Gate name: iswap, hadamard-a, hadamard-b, hadamard-both, or cnot
        /// (cnot reports the determinant obstruction instead).
        gate: String,
        /// Write the schedule itself (a JSON array consumable by `verify`)
        /// to this file; the report still goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a schedule file against a named gate, up to global phase.
    Verify {
        /// Path to a JSON schedule (array of {axis, levels, angle} objects).
        schedule: PathBuf,
        /// Gate the schedule should implement.
        #[arg(long)]
        target: String,
        /// Largest acceptable phase-aligned distance.
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        /// Also write the report JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve pulse angles for target virtual-qubit states and simulate the
    /// preparation.
    Prepare {
        /// Target for the first virtual qubit, as "x,y,z".
        #[arg(long, value_parser = parse_bloch)]
        bloch_a: BlochVector,
        /// Target for the second virtual qubit (defaults to --bloch-a).
        #[arg(long, value_parser = parse_bloch)]
        bloch_b: Option<BlochVector>,
        /// Require both qubits to share the --bloch-a target.
        #[arg(long, conflicts_with = "bloch_b")]
        identical: bool,
        /// Relative pulse-angle noise strength for an additional noisy run.
        #[arg(long, value_parser = parse_finite)]
        noise: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep an entropic uncertainty bound over random states.
    EntropyCheck {
        /// Which bound to sweep: log2, renyi, or log4.
        #[arg(long)]
        scenario: String,
        /// Renyi order (renyi scenario only; needs a finite alpha >= 1/2;
        /// the library API also accepts alpha = infinity).
        #[arg(long, value_parser = parse_finite)]
        alpha: Option<f64>,
        /// Estimate entropies from this many simulated shots per basis
        /// instead of exact probabilities.
        #[arg(long)]
        shots: Option<u64>,
        /// Relative pulse-angle noise strength.
        #[arg(long, value_parser = parse_finite)]
        noise: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Also write the report JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the per-trial margins as CSV (trial,lhs,bound,margin).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Certify that random x-pulse schedules never leave the
    /// unit-determinant class the controlled-NOT sits outside of.
    Obstruction {
        #[arg(long, default_value_t = 1000)]
        schedules: u64,
        #[arg(long, default_value_t = 20)]
        max_pulses: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_bloch(raw: &str) -> Result<BlochVector, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected \"x,y,z\", got {raw:?}"));
    }
    let mut coords = [0.0; 3];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        *slot = parse_finite(part.trim()).map_err(|e| format!("bad coordinate {part:?}: {e}"))?;
    }
    Ok(BlochVector::new(coords[0], coords[1], coords[2]))
}

// The scenario config carries parameters as JSON, which has no encoding for
// NaN or infinities, so non-finite values must be rejected before they are
// silently mapped to null.
fn parse_finite(raw: &str) -> Result<f64, String> {
    let value: f64 = raw.parse().map_err(|e| format!("{e}"))?;
    if !value.is_finite() {
        return Err(format!("expected a finite number, got {raw:?}"));
    }
    Ok(value)
}

fn triple(b: BlochVector) -> serde_json::Value {
    json!([b.x, b.y, b.z])
}

impl Command {
    fn into_config(self) -> ScenarioConfig {
        match self {
            Command::Compile { gate, output } => {
                let mut config = ScenarioConfig::new(Scenario::Compile).with_param("gate", gate);
                if let Some(path) = output {
                    config = config.with_output(path);
                }
                config
            }
            Command::Verify {
                schedule,
                target,
                tolerance,
                output,
            } => {
                let mut config = ScenarioConfig::new(Scenario::Verify)
                    .with_param("schedule", schedule.display().to_string())
                    .with_param("target", target)
                    .with_param("tolerance", tolerance);
                if let Some(path) = output {
                    config = config.with_output(path);
                }
                config
            }
            Command::Prepare {
                bloch_a,
                bloch_b,
                identical: _,
                noise,
                seed,
                output,
            } => {
                let mut config = ScenarioConfig::new(Scenario::Prepare)
                    .with_param("bloch_a", triple(bloch_a))
                    .with_param(
                        "bloch_b",
                        bloch_b.map(triple).unwrap_or(serde_json::Value::Null),
                    )
                    .with_param("noise", noise.map_or(serde_json::Value::Null, Into::into))
                    .with_seed(seed);
                if let Some(path) = output {
                    config = config.with_output(path);
                }
                config
            }
            Command::EntropyCheck {
                scenario,
                alpha,
                shots,
                noise,
                seed,
                trials,
                output,
                csv,
            } => {
                let mut config = ScenarioConfig::new(Scenario::EntropyCheck)
                    .with_param("scenario", scenario)
                    .with_param("alpha", alpha.map_or(serde_json::Value::Null, Into::into))
                    .with_param("shots", shots.map_or(serde_json::Value::Null, Into::into))
                    .with_param("noise", noise.map_or(serde_json::Value::Null, Into::into))
                    .with_param("trials", trials)
                    .with_param(
                        "csv",
                        csv.map_or(serde_json::Value::Null, |p| p.display().to_string().into()),
                    )
                    .with_seed(seed);
                if let Some(path) = output {
                    config = config.with_output(path);
                }
                config
            }
            Command::Obstruction {
                schedules,
                max_pulses,
                seed,
                output,
            } => {
                let mut config = ScenarioConfig::new(Scenario::Obstruction)
                    .with_param("schedules", schedules)
                    .with_param("max_pulses", max_pulses)
                    .with_seed(seed);
                if let Some(path) = output {
                    config = config.with_output(path);
                }
                config
            }
        }
    }
}

/// Prints the report to stdout, tolerating a closed pipe downstream.
fn print_report(report: &RunReport<serde_json::Value>) {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    if let Err(error) = writeln!(std::io::stdout().lock(), "{json}") {
        assert!(
            error.kind() == ErrorKind::BrokenPipe,
            "failed to write the report to stdout: {error}"
        );
    }
}

fn dispatch(cli: Cli) -> Result<bool, HarnessError> {
    let report = run(&cli.command.into_config())?;
    print_report(&report);
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {}: {error}", error_code(&error));
            ExitCode::from(2)
        }
    }
}
