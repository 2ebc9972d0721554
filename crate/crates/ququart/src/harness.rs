//! Scenario orchestration behind the command-line interface: report
//! envelopes, Monte Carlo sweeps, deterministic seeding, and CSV tables.
//!
//! Reports serialize to JSON with a fixed field order, so re-running a
//! scenario with the same configuration reproduces every byte except the
//! `duration_ms` field. Sweeps follow one seeding contract: trial `i`
//! derives all of its randomness from `base_seed + i` (the noise model uses
//! that seed directly; independent per-trial streams -- targets, shot
//! sampling -- mix in fixed salts first). Trials are generated and collected
//! in trial order, so the contract pins the output even if trials were ever
//! evaluated concurrently.

use crate::entropy::{
    conjugate_order, conjugate_pair_trial, frequencies, sample_shots, shannon, EntropyError,
    InequalityReport, MARGIN_TOL,
};
use crate::gates::{cnot_obstruction, compile, verify_schedule, CompileError, Gate};
use crate::io::{load_schedule, pulse_records, PulseRecord, ScheduleError};
use crate::linalg::C64;
use crate::prep::{solve_angles, PrepAngles, PrepError, PrepTarget};
use crate::pulse::{NoiseModel, PulseError};
use crate::state::{BlochVector, PureState4, QubitDensity};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

/// The documented default seed for every scenario.
pub const DEFAULT_SEED: u64 = 0;

/// Default pass tolerance on gate distances (compilation is exact, so this
/// is pure rounding headroom).
pub const DEFAULT_DISTANCE_TOL: f64 = 1e-12;

/// Pass tolerance when comparing prepared marginals against their targets:
/// looser than gate distances because the solver goes through inverse
/// trigonometry.
pub const DEFAULT_PREP_TOL: f64 = 1e-9;

/// Salt for the per-trial target stream (splitmix64 increment constant).
const TARGET_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
/// Salts for the per-trial measurement streams.
const SHOT_SALT: u64 = 0xA076_1D64_78BD_642F;
const SECOND_SHOT_SALT: u64 = 0xD1B5_4A32_D192_ED03;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Prep(#[from] PrepError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error("cannot write {path}: {source}")]
    WriteFile {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// A stable machine-parseable code for each error path, printed as the
/// one-line `error: <code>: <message>` diagnostic.
pub fn error_code(error: &HarnessError) -> &'static str {
    match error {
        HarnessError::Compile(CompileError::DeterminantObstruction { .. }) => {
            "determinant-obstruction"
        }
        HarnessError::Compile(CompileError::UnknownGate { .. }) => "unknown-gate",
        HarnessError::Schedule(ScheduleError::Read { .. }) => "unreadable-file",
        HarnessError::Schedule(ScheduleError::Write { .. }) => "unwritable-file",
        HarnessError::Schedule(ScheduleError::Json(_)) => "malformed-json",
        HarnessError::Schedule(ScheduleError::UnknownAxis { .. }) => "unknown-axis",
        HarnessError::Schedule(ScheduleError::LevelOutOfRange { .. }) => "level-out-of-range",
        HarnessError::Schedule(ScheduleError::DegenerateLevels { .. }) => "degenerate-levels",
        HarnessError::Schedule(ScheduleError::NonFiniteAngle { .. }) => "non-finite-angle",
        HarnessError::Prep(PrepError::RadiusMismatch { .. }) => "radius-mismatch",
        HarnessError::Prep(PrepError::OutsideBlochBall { .. }) => "outside-bloch-ball",
        HarnessError::Prep(PrepError::NonFiniteTarget) => "non-finite-target",
        HarnessError::Entropy(EntropyError::NegativeProbability { .. }) => "negative-probability",
        HarnessError::Entropy(EntropyError::NonFiniteProbability { .. }) => {
            "non-finite-probability"
        }
        HarnessError::Entropy(EntropyError::NotNormalized { .. }) => "not-normalized",
        HarnessError::Entropy(EntropyError::EmptyDistribution) => "empty-distribution",
        HarnessError::Entropy(EntropyError::OrderOutOfDomain { .. }) => "order-out-of-domain",
        HarnessError::Entropy(EntropyError::ConjugateUndefined { .. }) => "conjugate-undefined",
        HarnessError::Entropy(EntropyError::ZeroShots) => "zero-shots",
        HarnessError::Entropy(EntropyError::Preparation(PrepError::RadiusMismatch { .. })) => {
            "radius-mismatch"
        }
        HarnessError::Entropy(EntropyError::Preparation(PrepError::OutsideBlochBall {
            ..
        })) => "outside-bloch-ball",
        HarnessError::Entropy(EntropyError::Preparation(PrepError::NonFiniteTarget)) => {
            "non-finite-target"
        }
        HarnessError::Pulse(PulseError::LevelOutOfRange { .. }) => "level-out-of-range",
        HarnessError::Pulse(PulseError::DegenerateTransition { .. }) => "degenerate-transition",
        HarnessError::Pulse(PulseError::AncillaOnTransition { .. }) => "ancilla-on-transition",
        HarnessError::Pulse(PulseError::InvalidNoiseStrength { .. }) => "invalid-noise-strength",
        HarnessError::WriteFile { .. } => "unwritable-file",
        HarnessError::Usage(_) => "usage",
    }
}

/// The envelope around every scenario result.
#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: &'static str,
    pub seed: u64,
    pub config: serde_json::Value,
    pub results: T,
    pub passed: bool,
    pub duration_ms: f64,
}

fn envelope<T: Serialize>(
    scenario: &'static str,
    seed: u64,
    config: serde_json::Value,
    results: T,
    passed: bool,
    started: Instant,
) -> RunReport<T> {
    RunReport {
        tool: "ququart",
        version: env!("CARGO_PKG_VERSION"),
        scenario,
        seed,
        config,
        results,
        passed,
        duration_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

fn complex_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// `compile` scenario: a gate's pulse line plus the distance bookkeeping.
#[derive(Debug, Serialize)]
pub struct CompilePayload {
    pub gate: String,
    pub pulse_count: usize,
    pub distance_to_target: f64,
    pub phase: [f64; 2],
    pub schedule: Vec<PulseRecord>,
}

pub fn run_compile(gate: Gate) -> Result<RunReport<CompilePayload>, HarnessError> {
    let started = Instant::now();
    let compiled = compile(gate)?;
    let payload = CompilePayload {
        gate: gate.name().to_string(),
        pulse_count: compiled.schedule().len(),
        distance_to_target: compiled.distance(),
        phase: complex_pair(compiled.phase()),
        schedule: pulse_records(compiled.schedule()),
    };
    let passed = payload.distance_to_target < DEFAULT_DISTANCE_TOL;
    Ok(envelope(
        "compile",
        DEFAULT_SEED,
        json!({ "gate": gate.name() }),
        payload,
        passed,
        started,
    ))
}

/// `verify` scenario: distance of a schedule file against a gate target.
#[derive(Debug, Serialize)]
pub struct VerifyPayload {
    pub target: String,
    pub schedule_path: String,
    pub pulse_count: usize,
    pub lowered_pulse_count: usize,
    pub distance_to_target: f64,
    pub phase: [f64; 2],
    pub tolerance: f64,
}

pub fn run_verify(
    path: &Path,
    gate: Gate,
    tolerance: f64,
) -> Result<RunReport<VerifyPayload>, HarnessError> {
    let started = Instant::now();
    let schedule = load_schedule(path)?;
    let verification = verify_schedule(&schedule, gate);
    let payload = VerifyPayload {
        target: gate.name().to_string(),
        schedule_path: path.display().to_string(),
        pulse_count: verification.pulse_count,
        lowered_pulse_count: verification.lowered_pulse_count,
        distance_to_target: verification.distance,
        phase: complex_pair(verification.phase),
        tolerance,
    };
    let passed = payload.distance_to_target <= tolerance;
    Ok(envelope(
        "verify",
        DEFAULT_SEED,
        json!({ "target": gate.name(), "schedule": path.display().to_string(), "tolerance": tolerance }),
        payload,
        passed,
        started,
    ))
}

/// Per-qubit comparison of target, closed-form prediction, and simulation.
#[derive(Debug, Serialize)]
pub struct MarginalComparison {
    pub target: BlochVector,
    pub predicted: BlochVector,
    pub simulated: BlochVector,
    /// Trace distance between the simulated marginal and the target state.
    pub target_vs_simulated: f64,
    /// Trace distance between prediction and simulation (rounding only).
    pub predicted_vs_simulated: f64,
}

#[derive(Debug, Serialize)]
pub struct NoisyPrepBlock {
    pub relative_sigma: f64,
    pub noise_seed: u64,
    pub bloch_a: BlochVector,
    pub bloch_b: BlochVector,
    /// Trace distance from each clean marginal to its noisy counterpart.
    pub shift_a: f64,
    pub shift_b: f64,
    /// Trace distance between the two noisy marginals.
    pub marginal_gap: f64,
}

/// `prepare` scenario: angles, schedule, and marginal comparisons.
#[derive(Debug, Serialize)]
pub struct PreparePayload {
    pub angles: PrepAngles,
    pub schedule: Vec<PulseRecord>,
    pub lowered_pulse_count: usize,
    pub qubit_a: MarginalComparison,
    pub qubit_b: MarginalComparison,
    /// Trace distance between the two simulated marginals (zero for
    /// identical targets).
    pub marginal_gap: f64,
    pub noisy: Option<NoisyPrepBlock>,
}

fn compare_marginal(
    target: BlochVector,
    predicted: BlochVector,
    simulated: &QubitDensity,
) -> Result<MarginalComparison, HarnessError> {
    let target_density = target.density().map_err(|_| {
        HarnessError::Prep(PrepError::OutsideBlochBall {
            radius: target.norm(),
        })
    })?;
    let predicted_density = predicted.density().map_err(|_| {
        HarnessError::Prep(PrepError::OutsideBlochBall {
            radius: predicted.norm(),
        })
    })?;
    Ok(MarginalComparison {
        target,
        predicted,
        simulated: simulated.bloch(),
        target_vs_simulated: simulated.trace_distance(&target_density),
        predicted_vs_simulated: simulated.trace_distance(&predicted_density),
    })
}

pub fn run_prepare(
    target: PrepTarget,
    noise: Option<NoiseModel>,
    seed: u64,
) -> Result<RunReport<PreparePayload>, HarnessError> {
    let started = Instant::now();
    let angles = solve_angles(&target);
    let schedule = angles.schedule();
    let rho = angles.prepare().density();
    let (sigma_a, sigma_b) = (rho.reduce_a(), rho.reduce_b());
    let (predicted_a, predicted_b) = angles.predicted_bloch();
    let qubit_a = compare_marginal(target.bloch_a(), predicted_a, &sigma_a)?;
    let qubit_b = compare_marginal(target.bloch_b(), predicted_b, &sigma_b)?;
    let noisy = match &noise {
        None => None,
        Some(model) => {
            let noisy_rho = angles.prepare_noisy(model).density();
            let (noisy_a, noisy_b) = (noisy_rho.reduce_a(), noisy_rho.reduce_b());
            Some(NoisyPrepBlock {
                relative_sigma: model.relative_sigma(),
                noise_seed: model.seed(),
                bloch_a: noisy_a.bloch(),
                bloch_b: noisy_b.bloch(),
                shift_a: sigma_a.trace_distance(&noisy_a),
                shift_b: sigma_b.trace_distance(&noisy_b),
                marginal_gap: noisy_a.trace_distance(&noisy_b),
            })
        }
    };
    let passed = qubit_a.target_vs_simulated < DEFAULT_PREP_TOL
        && qubit_b.target_vs_simulated < DEFAULT_PREP_TOL;
    let payload = PreparePayload {
        angles,
        lowered_pulse_count: schedule.lowered().len(),
        schedule: pulse_records(&schedule),
        qubit_a,
        qubit_b,
        marginal_gap: sigma_a.trace_distance(&sigma_b),
        noisy,
    };
    let config = json!({
        "bloch_a": target.bloch_a(),
        "bloch_b": target.bloch_b(),
        "relative_sigma": noise.as_ref().map(|n| n.relative_sigma()),
    });
    Ok(envelope("prepare", seed, config, payload, passed, started))
}

/// The three inequality sweeps the `entropy-check` scenario can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyScenario {
    /// 1-bit Shannon bound on random single-qubit targets, end to end
    /// through preparation and the compiled Hadamard line.
    Log2,
    /// 1-bit Renyi bound at a chosen order, same pipeline.
    Renyi,
    /// 2-bit bound on Haar-random ququart states against the compiled
    /// Hadamard-on-both line.
    Log4,
}

impl EntropyScenario {
    pub fn name(&self) -> &'static str {
        match self {
            EntropyScenario::Log2 => "log2",
            EntropyScenario::Renyi => "renyi",
            EntropyScenario::Log4 => "log4",
        }
    }
}

impl fmt::Display for EntropyScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntropyScenario {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log2" => Ok(EntropyScenario::Log2),
            "renyi" => Ok(EntropyScenario::Renyi),
            "log4" => Ok(EntropyScenario::Log4),
            other => Err(HarnessError::Usage(format!(
                "unknown entropy scenario {other:?}; expected log2, renyi, or log4"
            ))),
        }
    }
}

/// One sweep trial, carrying the margin that decides the verdict (sampled
/// when shots were requested, exact otherwise).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub lhs_bits: f64,
    pub bound_bits: f64,
    pub margin_bits: f64,
    pub exact_margin_bits: f64,
}

/// `entropy-check` scenario: per-trial margins and summary statistics.
#[derive(Debug, Serialize)]
pub struct EntropyPayload {
    pub scenario: String,
    pub trials: u64,
    pub alpha: f64,
    pub beta: f64,
    pub shots: Option<u64>,
    pub relative_sigma: f64,
    pub exact_violations: u64,
    pub sampled_violations: Option<u64>,
    pub min_margin_bits: f64,
    pub mean_margin_bits: f64,
    pub notes: Vec<String>,
    pub rows: Vec<TrialRow>,
}

fn trial_target(seed: u64, trial: u64) -> BlochVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial) ^ TARGET_SALT);
    BlochVector::sample_ball(&mut rng)
}

fn trial_state(seed: u64, trial: u64) -> PureState4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial) ^ TARGET_SALT);
    PureState4::sample_haar(&mut rng)
}

fn log4_trial(
    seed: u64,
    trial: u64,
    shots: Option<u64>,
    noise: Option<&NoiseModel>,
) -> Result<(InequalityReport, Option<InequalityReport>), HarnessError> {
    let line = compile(Gate::HadamardBoth)
        .expect("hadamard-both has a tabulated line")
        .schedule()
        .clone();
    let psi = trial_state(seed, trial);
    let rotated_psi = match noise {
        None => line.apply(&psi),
        Some(model) => line.apply_with_noise(&psi, &model.for_trial(trial)),
    };
    let direct = crate::entropy::ProbabilityVector::new(psi.probabilities().to_vec())?;
    let rotated = crate::entropy::ProbabilityVector::new(rotated_psi.probabilities().to_vec())?;
    let lhs = shannon(&rotated) + shannon(&direct);
    let margin = lhs - 2.0;
    let exact = InequalityReport {
        alpha: 1.0,
        beta: 1.0,
        lhs_bits: lhs,
        bound_bits: 2.0,
        margin_bits: margin,
        satisfied: margin >= -MARGIN_TOL,
    };
    let sampled = match shots {
        None => None,
        Some(shots) => {
            let base = seed.wrapping_add(trial);
            let direct_counts = sample_shots(&psi, shots, base ^ SHOT_SALT)?;
            let rotated_counts = sample_shots(&rotated_psi, shots, base ^ SECOND_SHOT_SALT)?;
            let lhs =
                shannon(&frequencies(&direct_counts)?) + shannon(&frequencies(&rotated_counts)?);
            let margin = lhs - 2.0;
            Some(InequalityReport {
                alpha: 1.0,
                beta: 1.0,
                lhs_bits: lhs,
                bound_bits: 2.0,
                margin_bits: margin,
                satisfied: margin >= -MARGIN_TOL,
            })
        }
    };
    Ok((exact, sampled))
}

pub fn run_entropy(
    scenario: EntropyScenario,
    trials: u64,
    alpha: f64,
    shots: Option<u64>,
    noise: Option<NoiseModel>,
    seed: u64,
) -> Result<RunReport<EntropyPayload>, HarnessError> {
    let started = Instant::now();
    if trials == 0 {
        return Err(HarnessError::Usage(
            "entropy-check needs at least one trial".to_string(),
        ));
    }
    // The Shannon scenarios are order-1 checks regardless of the request.
    let alpha = match scenario {
        EntropyScenario::Log2 | EntropyScenario::Log4 => 1.0,
        EntropyScenario::Renyi => alpha,
    };
    let beta = conjugate_order(alpha)?;
    let mut rows = Vec::with_capacity(trials as usize);
    let mut exact_violations = 0u64;
    let mut sampled_violations = shots.map(|_| 0u64);
    for trial in 0..trials {
        let trial_noise = noise.as_ref().map(|n| n.for_trial(trial));
        let (exact, sampled) = match scenario {
            EntropyScenario::Log2 | EntropyScenario::Renyi => {
                let target = trial_target(seed, trial);
                let shot_seed = seed.wrapping_add(trial) ^ SHOT_SALT;
                let outcome =
                    conjugate_pair_trial(target, alpha, shots, shot_seed, trial_noise.as_ref())?;
                (outcome.exact, outcome.sampled)
            }
            EntropyScenario::Log4 => log4_trial(seed, trial, shots, trial_noise.as_ref())?,
        };
        if !exact.satisfied {
            exact_violations += 1;
        }
        if let (Some(count), Some(sampled)) = (sampled_violations.as_mut(), &sampled) {
            if !sampled.satisfied {
                *count += 1;
            }
        }
        let operative = sampled.unwrap_or(exact);
        rows.push(TrialRow {
            trial,
            lhs_bits: operative.lhs_bits,
            bound_bits: operative.bound_bits,
            margin_bits: operative.margin_bits,
            exact_margin_bits: exact.margin_bits,
        });
    }
    let min_margin_bits = rows
        .iter()
        .map(|r| r.margin_bits)
        .fold(f64::INFINITY, f64::min);
    let mean_margin_bits = rows.iter().map(|r| r.margin_bits).sum::<f64>() / trials as f64;
    let sigma = noise.as_ref().map_or(0.0, |n| n.relative_sigma());
    let mut notes = Vec::new();
    if sigma > 0.0 && exact_violations > 0 {
        notes.push(
            "exact-path margins below the floor are noise-model artifacts: perturbed angles \
             break the conjugate-pair relation between the marginals, so the bound need not hold"
                .to_string(),
        );
    }
    if matches!((&sampled_violations, shots), (Some(v), Some(_)) if *v > 0) {
        notes.push(
            "sampled margins below the floor are estimator artifacts: plug-in entropies are \
             biased low near equality cases"
                .to_string(),
        );
    }
    // Without noise the bound is a theorem; any exact-path violation fails
    // the run. Noisy and sampled dips are reported, not failed.
    let passed = sigma > 0.0 || exact_violations == 0;
    let payload = EntropyPayload {
        scenario: scenario.name().to_string(),
        trials,
        alpha,
        beta,
        shots,
        relative_sigma: sigma,
        exact_violations,
        sampled_violations,
        min_margin_bits,
        mean_margin_bits,
        notes,
        rows,
    };
    let config = json!({
        "scenario": scenario.name(),
        "trials": trials,
        "alpha": alpha,
        "shots": shots,
        "relative_sigma": sigma,
    });
    Ok(envelope(
        "entropy-check",
        seed,
        config,
        payload,
        passed,
        started,
    ))
}

/// Renders sweep rows as the four-column CSV table.
pub fn margins_csv(rows: &[TrialRow]) -> String {
    let mut out = String::from("trial,lhs,bound,margin\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.trial, row.lhs_bits, row.bound_bits, row.margin_bits
        ));
    }
    out
}

/// `obstruction` scenario payload.
#[derive(Debug, Serialize)]
pub struct ObstructionPayload {
    pub target_gate: String,
    pub target_determinant: [f64; 2],
    pub phase_shifted_determinant: [f64; 2],
    pub schedules_checked: usize,
    pub max_pulses: usize,
    pub max_determinant_deviation: f64,
    pub min_distance_to_target: f64,
    pub explanation: String,
}

pub fn run_obstruction(
    schedules: usize,
    max_pulses: usize,
    seed: u64,
) -> Result<RunReport<ObstructionPayload>, HarnessError> {
    let started = Instant::now();
    if schedules == 0 || max_pulses == 0 {
        return Err(HarnessError::Usage(
            "obstruction needs at least one schedule and one pulse".to_string(),
        ));
    }
    let report = cnot_obstruction(schedules, max_pulses, seed);
    let passed = report.max_determinant_deviation < 1e-10
        && (report.target_determinant - C64::new(-1.0, 0.0)).norm() < 1e-12;
    let payload = ObstructionPayload {
        target_gate: Gate::Cnot.name().to_string(),
        target_determinant: complex_pair(report.target_determinant),
        phase_shifted_determinant: complex_pair(report.phase_shifted_determinant),
        schedules_checked: report.schedules_checked,
        max_pulses: report.max_pulses,
        max_determinant_deviation: report.max_determinant_deviation,
        min_distance_to_target: report.min_distance_to_target,
        explanation: "every pulse has determinant +1, so schedule products stay in the \
                      unit-determinant class; the target's determinant is -1, hence no schedule \
                      reaches it exactly. A global phase (det(e^{i pi/4} target) = +1) removes \
                      the obstruction, so equality up to phase remains possible."
            .to_string(),
    };
    let config = json!({ "schedules": schedules, "max_pulses": max_pulses });
    Ok(envelope(
        "obstruction",
        seed,
        config,
        payload,
        passed,
        started,
    ))
}

/// The five scenarios the harness can dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Compile,
    Verify,
    Prepare,
    EntropyCheck,
    Obstruction,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Compile => "compile",
            Scenario::Verify => "verify",
            Scenario::Prepare => "prepare",
            Scenario::EntropyCheck => "entropy-check",
            Scenario::Obstruction => "obstruction",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Scenario::Compile,
            Scenario::Verify,
            Scenario::Prepare,
            Scenario::EntropyCheck,
            Scenario::Obstruction,
        ]
        .into_iter()
        .find(|scenario| scenario.name() == s)
        .ok_or_else(|| HarnessError::Usage(format!("unknown scenario {s:?}")))
    }
}

/// A scenario request: which scenario, its parameters as a JSON map, the
/// base seed, and an optional artifact path. [`run`] validates the
/// parameters, so configs can come from any front end.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub seed: u64,
    /// For `compile`, the schedule artifact; for every other scenario, a
    /// mirror of the report JSON. Relative paths resolve via
    /// [`resolve_output`].
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            parameters: serde_json::Map::new(),
            seed: DEFAULT_SEED,
            output_path: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output_path = Some(path.into());
        self
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        let value = value.into();
        if !value.is_null() {
            self.parameters.insert(key.to_string(), value);
        }
        self
    }
}

/// Environment variable naming the default directory for report and CSV
/// artifacts.
pub const OUT_DIR_ENV: &str = "QUQUART_OUT_DIR";

/// Resolves a relative artifact path under `$QUQUART_OUT_DIR` when set;
/// absolute paths and unset environments pass through.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => {
            let base = PathBuf::from(dir);
            let _ = std::fs::create_dir_all(&base);
            base.join(path)
        }
        _ => path.to_path_buf(),
    }
}

fn required_str<'a>(config: &'a ScenarioConfig, key: &str) -> Result<&'a str, HarnessError> {
    config
        .parameters
        .get(key)
        .and_then(serde_json::Value::as_str)
        .ok_or_else(|| {
            HarnessError::Usage(format!(
                "{} needs the string parameter {key:?}",
                config.scenario
            ))
        })
}

fn optional_f64(config: &ScenarioConfig, key: &str) -> Result<Option<f64>, HarnessError> {
    match config.parameters.get(key) {
        None => Ok(None),
        Some(value) => value
            .as_f64()
            .map(Some)
            .ok_or_else(|| HarnessError::Usage(format!("parameter {key:?} must be a number"))),
    }
}

fn optional_u64(config: &ScenarioConfig, key: &str) -> Result<Option<u64>, HarnessError> {
    match config.parameters.get(key) {
        None => Ok(None),
        Some(value) => value.as_u64().map(Some).ok_or_else(|| {
            HarnessError::Usage(format!("parameter {key:?} must be a nonnegative integer"))
        }),
    }
}

fn optional_bloch(config: &ScenarioConfig, key: &str) -> Result<Option<BlochVector>, HarnessError> {
    let Some(value) = config.parameters.get(key) else {
        return Ok(None);
    };
    let coords: Option<Vec<f64>> = value.as_array().map(|entries| {
        entries
            .iter()
            .filter_map(serde_json::Value::as_f64)
            .collect()
    });
    match coords.as_deref() {
        Some([x, y, z]) => Ok(Some(BlochVector::new(*x, *y, *z))),
        _ => Err(HarnessError::Usage(format!(
            "parameter {key:?} must be a [x, y, z] number triple"
        ))),
    }
}

fn parse_gate(name: &str) -> Result<Gate, HarnessError> {
    name.parse::<Gate>().map_err(HarnessError::from)
}

fn erase<T: Serialize>(report: RunReport<T>) -> RunReport<serde_json::Value> {
    RunReport {
        tool: report.tool,
        version: report.version,
        scenario: report.scenario,
        seed: report.seed,
        config: report.config,
        results: serde_json::to_value(&report.results).expect("payloads serialize"),
        passed: report.passed,
        duration_ms: report.duration_ms,
    }
}

fn mirror_report<T: Serialize>(
    report: &RunReport<T>,
    path: Option<&Path>,
) -> Result<(), HarnessError> {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(report).expect("reports serialize");
        write_text(&resolve_output(path), &format!("{json}\n"))?;
    }
    Ok(())
}

/// Validates a [`ScenarioConfig`] and dispatches it to the matching runner,
/// writing the declared artifacts (schedule, report mirror, CSV) along the
/// way. Missing or ill-typed parameters surface as usage errors.
pub fn run(config: &ScenarioConfig) -> Result<RunReport<serde_json::Value>, HarnessError> {
    match config.scenario {
        Scenario::Compile => {
            let report = run_compile(parse_gate(required_str(config, "gate")?)?)?;
            if let Some(path) = &config.output_path {
                let schedule = serde_json::to_string_pretty(&report.results.schedule)
                    .expect("schedules serialize");
                write_text(&resolve_output(path), &format!("{schedule}\n"))?;
            }
            Ok(erase(report))
        }
        Scenario::Verify => {
            let path = PathBuf::from(required_str(config, "schedule")?);
            let gate = parse_gate(required_str(config, "target")?)?;
            let tolerance = optional_f64(config, "tolerance")?.unwrap_or(DEFAULT_DISTANCE_TOL);
            let report = run_verify(&path, gate, tolerance)?;
            mirror_report(&report, config.output_path.as_deref())?;
            Ok(erase(report))
        }
        Scenario::Prepare => {
            let a = optional_bloch(config, "bloch_a")?.ok_or_else(|| {
                HarnessError::Usage("prepare needs the bloch_a parameter".to_string())
            })?;
            let target = match optional_bloch(config, "bloch_b")? {
                Some(b) => PrepTarget::new(a, b)?,
                None => PrepTarget::identical(a)?,
            };
            let noise = optional_f64(config, "noise")?
                .map(|sigma| NoiseModel::new(sigma, config.seed))
                .transpose()?;
            let report = run_prepare(target, noise, config.seed)?;
            mirror_report(&report, config.output_path.as_deref())?;
            Ok(erase(report))
        }
        Scenario::EntropyCheck => {
            let sweep: EntropyScenario = required_str(config, "scenario")?.parse()?;
            let alpha = match (sweep, optional_f64(config, "alpha")?) {
                (EntropyScenario::Renyi, Some(alpha)) => alpha,
                (EntropyScenario::Renyi, None) => {
                    return Err(HarnessError::Usage(
                        "the renyi scenario requires an alpha parameter".to_string(),
                    ))
                }
                (_, Some(_)) => {
                    return Err(HarnessError::Usage(
                        "alpha only applies to the renyi scenario".to_string(),
                    ))
                }
                (_, None) => 1.0,
            };
            let shots = optional_u64(config, "shots")?;
            let trials = optional_u64(config, "trials")?.unwrap_or(1000);
            let noise = optional_f64(config, "noise")?
                .map(|sigma| NoiseModel::new(sigma, config.seed))
                .transpose()?;
            let report = run_entropy(sweep, trials, alpha, shots, noise, config.seed)?;
            if let Some(csv) = config
                .parameters
                .get("csv")
                .and_then(serde_json::Value::as_str)
            {
                write_text(
                    &resolve_output(Path::new(csv)),
                    &margins_csv(&report.results.rows),
                )?;
            }
            mirror_report(&report, config.output_path.as_deref())?;
            Ok(erase(report))
        }
        Scenario::Obstruction => {
            let schedules = optional_u64(config, "schedules")?.unwrap_or(1000) as usize;
            let max_pulses = optional_u64(config, "max_pulses")?.unwrap_or(20) as usize;
            let report = run_obstruction(schedules, max_pulses, config.seed)?;
            mirror_report(&report, config.output_path.as_deref())?;
            Ok(erase(report))
        }
    }
}

/// Mean trace distance between the two marginals after identically-targeted
/// noisy preparation, per noise strength. Trial `i` reuses the same target
/// and noise seed at every strength, so the sweep is a paired comparison.
pub fn marginal_gap_sweep(
    sigmas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<(f64, f64)>, HarnessError> {
    let mut points = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let mut total = 0.0;
        for trial in 0..trials {
            let target = trial_target(seed, trial);
            let angles = crate::prep::identical_prep(target)?;
            let model = NoiseModel::new(sigma, seed)?.for_trial(trial);
            let rho = angles.prepare_noisy(&model).density();
            total += rho.reduce_a().trace_distance(&rho.reduce_b());
        }
        points.push((sigma, total / trials as f64));
    }
    Ok(points)
}

/// Writes text to a file with the harness error wrapping.
pub fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    std::fs::write(path, text).map_err(|source| HarnessError::WriteFile {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_duration(value: &mut serde_json::Value) {
        value
            .as_object_mut()
            .expect("reports are objects")
            .remove("duration_ms");
    }

    #[test]
    fn compile_report_carries_the_schedule_and_passes() {
        let report = run_compile(Gate::Iswap).unwrap();
        assert!(report.passed);
        assert_eq!(report.results.pulse_count, 1);
        assert!(report.results.distance_to_target < 1e-12);
        assert_eq!(report.results.schedule.len(), 1);
        assert_eq!(report.results.schedule[0].axis, "x");
    }

    #[test]
    fn compile_of_cnot_propagates_the_obstruction_error() {
        let err = run_compile(Gate::Cnot).unwrap_err();
        assert_eq!(error_code(&err), "determinant-obstruction");
    }

    #[test]
    fn entropy_log2_sweep_sees_no_exact_violations() {
        let report = run_entropy(EntropyScenario::Log2, 200, 1.0, None, None, 0).unwrap();
        assert!(report.passed);
        assert_eq!(report.results.exact_violations, 0);
        assert_eq!(report.results.rows.len(), 200);
        assert!(report.results.min_margin_bits >= -1e-10);
        assert!(report.results.notes.is_empty());
    }

    #[test]
    fn entropy_reports_are_deterministic_modulo_duration() {
        let a = run_entropy(EntropyScenario::Log4, 50, 1.0, Some(200), None, 7).unwrap();
        let b = run_entropy(EntropyScenario::Log4, 50, 1.0, Some(200), None, 7).unwrap();
        let mut ja = serde_json::to_value(&a).unwrap();
        let mut jb = serde_json::to_value(&b).unwrap();
        strip_duration(&mut ja);
        strip_duration(&mut jb);
        assert_eq!(ja, jb);
    }

    #[test]
    fn entropy_trials_are_paired_across_noise_strengths() {
        // Same seed, different sigma: trial targets must coincide, so the
        // exact margins at sigma=0 equal the noiseless run's margins.
        let clean = run_entropy(EntropyScenario::Log2, 20, 1.0, None, None, 3).unwrap();
        let silent = run_entropy(
            EntropyScenario::Log2,
            20,
            1.0,
            None,
            Some(NoiseModel::new(0.0, 3).unwrap()),
            3,
        )
        .unwrap();
        for (c, s) in clean.results.rows.iter().zip(&silent.results.rows) {
            assert!((c.exact_margin_bits - s.exact_margin_bits).abs() < 1e-12);
        }
    }

    #[test]
    fn renyi_scenario_at_order_one_matches_log2_rows() {
        let log2 = run_entropy(EntropyScenario::Log2, 30, 1.0, None, None, 5).unwrap();
        let renyi = run_entropy(EntropyScenario::Renyi, 30, 1.0, None, None, 5).unwrap();
        for (a, b) in log2.results.rows.iter().zip(&renyi.results.rows) {
            assert_eq!(a.margin_bits, b.margin_bits);
        }
    }

    #[test]
    fn csv_has_header_and_one_line_per_trial() {
        let report = run_entropy(EntropyScenario::Log2, 5, 1.0, None, None, 0).unwrap();
        let csv = margins_csv(&report.results.rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "trial,lhs,bound,margin");
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn obstruction_run_passes_and_documents_the_phase_escape() {
        let report = run_obstruction(100, 10, 0).unwrap();
        assert!(report.passed);
        assert_eq!(report.results.target_determinant, [-1.0, 0.0]);
        assert!((report.results.phase_shifted_determinant[0] - 1.0).abs() < 1e-12);
        assert!(report.results.explanation.contains("determinant"));
    }

    #[test]
    fn zero_trial_and_zero_schedule_requests_are_usage_errors() {
        let err = run_entropy(EntropyScenario::Log2, 0, 1.0, None, None, 0).unwrap_err();
        assert_eq!(error_code(&err), "usage");
        let err = run_obstruction(0, 5, 0).unwrap_err();
        assert_eq!(error_code(&err), "usage");
    }

    #[test]
    fn marginal_gap_sweep_is_flat_zero_without_noise_and_grows_with_it() {
        let points = marginal_gap_sweep(&[0.0, 0.01], 25, 0).unwrap();
        assert!(points[0].1 < 1e-12, "noiseless gap {}", points[0].1);
        assert!(points[1].1 > points[0].1);
    }

    #[test]
    fn prepare_report_round_trips_its_target() {
        let target = PrepTarget::identical(BlochVector::new(0.3, -0.1, 0.4)).unwrap();
        let report = run_prepare(target, None, 0).unwrap();
        assert!(report.passed);
        assert!(report.results.qubit_a.target_vs_simulated < 1e-10);
        assert!(report.results.qubit_b.target_vs_simulated < 1e-10);
        assert!(report.results.marginal_gap < 1e-12);
        assert_eq!(report.results.schedule.len(), 9);
        assert_eq!(report.results.lowered_pulse_count, 17);
        assert!(report.results.noisy.is_none());
    }

    #[test]
    fn config_dispatch_runs_compile_and_writes_the_schedule_artifact() {
        let path = std::env::temp_dir().join(format!(
            "ququart-harness-{}-compile.json",
            std::process::id()
        ));
        let config = ScenarioConfig::new(Scenario::Compile)
            .with_param("gate", "hadamard-b")
            .with_output(&path);
        let report = run(&config).unwrap();
        assert!(report.passed);
        assert_eq!(report.results["pulse_count"], 4);
        let loaded = crate::io::load_schedule(&path).unwrap();
        assert_eq!(loaded.len(), 4);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn config_dispatch_reports_missing_and_ill_typed_parameters_as_usage() {
        let err = run(&ScenarioConfig::new(Scenario::Compile)).unwrap_err();
        assert_eq!(error_code(&err), "usage");
        let config = ScenarioConfig::new(Scenario::Prepare).with_param("bloch_a", "0.3,0,0");
        let err = run(&config).unwrap_err();
        assert_eq!(error_code(&err), "usage");
        let config = ScenarioConfig::new(Scenario::EntropyCheck)
            .with_param("scenario", "log2")
            .with_param("trials", 3)
            .with_param("alpha", 2.0);
        let err = run(&config).unwrap_err();
        assert_eq!(error_code(&err), "usage");
    }

    #[test]
    fn config_dispatch_matches_the_typed_runner() {
        let config = ScenarioConfig::new(Scenario::Obstruction)
            .with_param("schedules", 50)
            .with_param("max_pulses", 8)
            .with_seed(3);
        let erased = run(&config).unwrap();
        let typed = run_obstruction(50, 8, 3).unwrap();
        assert_eq!(
            erased.results,
            serde_json::to_value(&typed.results).unwrap()
        );
    }

    #[test]
    fn prepare_with_noise_reports_the_shift_block() {
        let target = PrepTarget::identical(BlochVector::new(0.5, 0.0, 0.0)).unwrap();
        let noise = NoiseModel::new(0.01, 9).unwrap();
        let report = run_prepare(target, Some(noise), 9).unwrap();
        let block = report.results.noisy.unwrap();
        assert_eq!(block.relative_sigma, 0.01);
        assert!(block.shift_a > 0.0);
        assert!(block.marginal_gap > 0.0);
    }
}
