//! A four-level quantum system ("ququart") operated as two virtual qubits,
//! driven entirely by resonant two-level pulses.
//!
//! Level `2a + b` of the register encodes the qubit pair `(a, b)`: levels
//! 0..3 are `00`, `01`, `10`, `11`, with qubit A the high bit. On that
//! register the crate covers the full pulse-level workflow:
//!
//! * [`pulse`] -- x/y rotations on level pairs, schedules, the exact
//!   lowering of y rotations to x pulses through an ancilla level, and a
//!   seeded multiplicative angle-noise model;
//! * [`gates`] -- tabulated pulse lines for iSWAP and the three Hadamard
//!   variants, schedule verification up to global phase, and the
//!   determinant obstruction that keeps the controlled-NOT out of exact
//!   reach;
//! * [`prep`] -- closed-form solvable preparation of arbitrary
//!   equal-radius single-qubit targets on both virtual qubits;
//! * [`entropy`] -- Shannon/order-parameterized entropies and the
//!   conjugate-basis uncertainty bounds (1 bit per qubit, 2 bits for the
//!   register), checked against compiled pulse lines, with finite-shot
//!   sampling;
//! * [`state`] -- pure states, density matrices, partial traces over
//!   either virtual qubit, and Bloch-vector geometry;
//! * [`io`] -- the JSON wire format for schedules;
//! * [`harness`] -- the scenario runners and report types behind the
//!   `ququart` binary;
//! * [`linalg`] -- small complex-matrix helpers (phase alignment,
//!   Hermitian eigenvalues).
//!
//! # Conventions
//!
//! Schedules are written in *time order*: element 0 acts first. Operator
//! products therefore read right to left, and [`pulse::PulseSchedule::unitary`]
//! folds accordingly; that reversal lives in one place.
//!
//! Bloch components follow the standard convention `x = 2 Re rho01`,
//! `y = -2 Im rho01`, `z = rho00 - rho11`, so the upper-right density
//! entry is `(x - i y) / 2`.
//!
//! Randomness is always explicit: every stochastic routine takes either a
//! caller-provided generator or a seed, and sweeps derive trial `i` from
//! `base_seed + i`.

pub mod entropy;
pub mod gates;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod prep;
pub mod pulse;
pub mod state;

pub use entropy::{
    check_log2, check_log4, check_renyi, conjugate_order, conjugate_pair_trial, frequencies, renyi,
    sample_shots, shannon, EntropyError, InequalityReport, PairTrial, ProbabilityVector,
};
pub use gates::{
    cnot_obstruction, compile, hadamard2, rotation_form, verify_schedule, CompileError,
    CompiledGate, Gate, GateVerification, ObstructionReport,
};
pub use harness::{EntropyScenario, HarnessError, RunReport, Scenario, ScenarioConfig};
pub use io::{
    load_schedule, pulse_records, save_schedule, schedule_from_json, schedule_to_json, PulseRecord,
    ScheduleError,
};
pub use linalg::{CMatrix2, CMatrix4, CVector2, CVector4, C64};
pub use prep::{identical_prep, solve_angles, PrepAngles, PrepError, PrepTarget};
pub use pulse::{Axis, NoiseModel, Pulse, PulseError, PulseSchedule, Transition};
pub use state::{BlochVector, DensityMatrix4, PureState4, QubitDensity, StateError};
