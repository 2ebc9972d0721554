//! Entropic uncertainty bounds for the encoded qubits, checked exactly and
//! from simulated measurement statistics.
//!
//! For a qubit state `sigma`, measuring in the computational basis samples
//! `diag(sigma)` while measuring after a Hadamard samples `diag(H sigma H)`.
//! The two bases are mutually unbiased, so the entropies obey
//!
//! ```text
//! H(diag(H sigma H)) + H(diag(sigma)) >= log 2   (1 bit)
//! ```
//!
//! and more generally `R_alpha + R_beta >= 1` bit for Renyi entropies with
//! conjugate orders `1/alpha + 1/beta = 2`. The two-qubit analogue bounds
//! the computational-basis entropy of a ququart state plus that of its
//! Hadamard-on-both-qubits image by `log 4` (2 bits).
//!
//! All entropies are in bits (base-2 logarithms). Margins are `lhs - bound`;
//! a margin is *satisfied* when it clears `-`[`MARGIN_TOL`], the allowance
//! for rounding in exact-path computations. Note that plug-in estimates
//! from finite shots are biased low, so sampled margins of equality cases
//! sit slightly negative on purpose -- that is an estimator artifact, not a
//! broken bound.

use crate::gates::{compile, hadamard2, Gate};
use crate::prep::{identical_prep, PrepError};
use crate::pulse::{NoiseModel, PulseSchedule};
use crate::state::{BlochVector, PureState4, QubitDensity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

/// Slack on inequality margins: exact-path margins above `-MARGIN_TOL`
/// count as satisfied.
pub const MARGIN_TOL: f64 = 1e-10;

/// Entries may undershoot zero by this much (rounding of reduced-density
/// diagonals) and are clamped; anything lower is an error.
const NEGATIVITY_TOL: f64 = 1e-12;

/// Probability sums must hit 1 within this.
const NORMALIZATION_TOL: f64 = 1e-9;

/// Orders this close to 1 use the Shannon limit of the Renyi formula.
const SHANNON_ORDER_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("probability {value} is negative beyond tolerance")]
    NegativeProbability { value: f64 },
    #[error("probability {value} is not finite")]
    NonFiniteProbability { value: f64 },
    #[error("probabilities sum to {sum}, expected 1 within {NORMALIZATION_TOL}")]
    NotNormalized { sum: f64 },
    #[error("a probability distribution needs at least one entry")]
    EmptyDistribution,
    #[error("Renyi order {alpha} is outside [0, inf]")]
    OrderOutOfDomain { alpha: f64 },
    #[error("order {alpha} has no conjugate: 1/alpha + 1/beta = 2 needs alpha >= 1/2")]
    ConjugateUndefined { alpha: f64 },
    #[error("sampling needs at least one shot")]
    ZeroShots,
    #[error(transparent)]
    Preparation(#[from] PrepError),
}

/// A validated probability distribution: nonnegative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Validates and wraps `values`. Entries in `[-1e-12, 0)` are clamped
    /// to zero; the sum must be 1 within 1e-9.
    pub fn new(values: Vec<f64>) -> Result<Self, EntropyError> {
        if values.is_empty() {
            return Err(EntropyError::EmptyDistribution);
        }
        let mut cleaned = values;
        for v in &mut cleaned {
            if !v.is_finite() {
                return Err(EntropyError::NonFiniteProbability { value: *v });
            }
            if *v < 0.0 {
                if *v < -NEGATIVITY_TOL {
                    return Err(EntropyError::NegativeProbability { value: *v });
                }
                *v = 0.0;
            }
        }
        let sum: f64 = cleaned.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(EntropyError::NotNormalized { sum });
        }
        Ok(Self(cleaned))
    }

    /// The uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self, EntropyError> {
        if n == 0 {
            return Err(EntropyError::EmptyDistribution);
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Wraps diagonals of validated states, which are distributions up to
/// rounding.
fn distribution(values: &[f64]) -> ProbabilityVector {
    ProbabilityVector::new(values.to_vec())
        .expect("diagonals of validated states are probability distributions")
}

/// Shannon entropy in bits, with the `0 log 0 = 0` convention.
pub fn shannon(p: &ProbabilityVector) -> f64 {
    p.as_slice()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.log2())
        .sum()
}

/// Renyi entropy of order `alpha` in bits.
///
/// * `alpha = 0`: log2 of the support size (max-entropy);
/// * `alpha` within 1e-8 of 1: the Shannon limit, delegated bit-for-bit to
///   [`shannon`];
/// * `alpha = inf`: min-entropy `-log2(max p)`;
/// * otherwise `log2(sum p^alpha) / (1 - alpha)`.
pub fn renyi(p: &ProbabilityVector, alpha: f64) -> Result<f64, EntropyError> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(EntropyError::OrderOutOfDomain { alpha });
    }
    if alpha == 0.0 {
        let support = p.as_slice().iter().filter(|&&v| v > 0.0).count();
        return Ok((support as f64).log2());
    }
    if alpha.is_infinite() {
        let max = p.as_slice().iter().cloned().fold(0.0, f64::max);
        return Ok(-max.log2());
    }
    if (alpha - 1.0).abs() < SHANNON_ORDER_TOL {
        return Ok(shannon(p));
    }
    let moment: f64 = p
        .as_slice()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v.powf(alpha))
        .sum();
    Ok(moment.log2() / (1.0 - alpha))
}

/// The conjugate Renyi order: `beta` with `1/alpha + 1/beta = 2`. Defined
/// for `alpha >= 1/2`, exchanging the endpoints `1/2 <-> inf` and fixing 1.
pub fn conjugate_order(alpha: f64) -> Result<f64, EntropyError> {
    if alpha.is_nan() || alpha < 0.5 {
        return Err(EntropyError::ConjugateUndefined { alpha });
    }
    if alpha == 0.5 {
        return Ok(f64::INFINITY);
    }
    if alpha.is_infinite() {
        return Ok(0.5);
    }
    Ok(alpha / (2.0 * alpha - 1.0))
}

/// One inequality evaluation: entropies, bound, margin, verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    /// Order applied in the reported sum (1 for Shannon checks).
    pub alpha: f64,
    /// Conjugate of `alpha`.
    pub beta: f64,
    /// Entropy sum in bits (the smaller of the two order assignments).
    pub lhs_bits: f64,
    /// The bound in bits: 1 for qubit checks, 2 for the ququart check.
    pub bound_bits: f64,
    /// `lhs_bits - bound_bits`.
    pub margin_bits: f64,
    /// Whether the margin clears `-`[`MARGIN_TOL`].
    pub satisfied: bool,
}

fn report(alpha: f64, beta: f64, lhs_bits: f64, bound_bits: f64) -> InequalityReport {
    let margin_bits = lhs_bits - bound_bits;
    InequalityReport {
        alpha,
        beta,
        lhs_bits,
        bound_bits,
        margin_bits,
        satisfied: margin_bits >= -MARGIN_TOL,
    }
}

/// The conjugate-order sum for a (Hadamard-basis, computational-basis)
/// distribution pair. Both order assignments satisfy the bound; the report
/// carries the smaller sum, so `satisfied` certifies both.
fn pair_report(
    rotated: &ProbabilityVector,
    direct: &ProbabilityVector,
    alpha: f64,
    bound_bits: f64,
) -> Result<InequalityReport, EntropyError> {
    let beta = conjugate_order(alpha)?;
    let forward = renyi(rotated, alpha)? + renyi(direct, beta)?;
    let swapped = renyi(rotated, beta)? + renyi(direct, alpha)?;
    Ok(report(alpha, beta, forward.min(swapped), bound_bits))
}

/// Checks the 1-bit Shannon bound for `sigma`: entropy of the Hadamard-basis
/// diagonal plus entropy of the computational diagonal.
pub fn check_log2(sigma: &QubitDensity) -> InequalityReport {
    let rotated = distribution(&sigma.conjugate_by(&hadamard2()).diagonal());
    let direct = distribution(&sigma.diagonal());
    report(1.0, 1.0, shannon(&rotated) + shannon(&direct), 1.0)
}

/// Checks the 1-bit Renyi bound at conjugate orders `(alpha, beta)`. At
/// `alpha = 1` this reproduces [`check_log2`] exactly.
pub fn check_renyi(sigma: &QubitDensity, alpha: f64) -> Result<InequalityReport, EntropyError> {
    let rotated = distribution(&sigma.conjugate_by(&hadamard2()).diagonal());
    let direct = distribution(&sigma.diagonal());
    pair_report(&rotated, &direct, alpha, 1.0)
}

fn hadamard_both_line() -> &'static PulseSchedule {
    static LINE: OnceLock<PulseSchedule> = OnceLock::new();
    LINE.get_or_init(|| {
        compile(Gate::HadamardBoth)
            .expect("hadamard-both has a tabulated line")
            .schedule()
            .clone()
    })
}

fn hadamard_b_line() -> &'static PulseSchedule {
    static LINE: OnceLock<PulseSchedule> = OnceLock::new();
    LINE.get_or_init(|| {
        compile(Gate::HadamardB)
            .expect("hadamard-b has a tabulated line")
            .schedule()
            .clone()
    })
}

/// Checks the 2-bit bound for a ququart pure state: computational-basis
/// entropy of `psi` plus that of its image under the compiled
/// Hadamard-on-both line.
pub fn check_log4(psi: &PureState4) -> InequalityReport {
    let direct = distribution(&psi.probabilities());
    let rotated = distribution(&hadamard_both_line().apply(psi).probabilities());
    report(1.0, 1.0, shannon(&rotated) + shannon(&direct), 2.0)
}

/// Samples `shots` computational-basis outcomes of `psi` with a dedicated
/// seeded generator; returns per-level counts.
pub fn sample_shots(psi: &PureState4, shots: u64, seed: u64) -> Result<[u64; 4], EntropyError> {
    if shots == 0 {
        return Err(EntropyError::ZeroShots);
    }
    let p = psi.probabilities();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut outcome = 3; // the last bucket absorbs rounding leftovers
        for (level, &prob) in p.iter().enumerate() {
            acc += prob;
            if u < acc {
                outcome = level;
                break;
            }
        }
        counts[outcome] += 1;
    }
    Ok(counts)
}

/// Empirical frequencies of a count vector.
pub fn frequencies(counts: &[u64; 4]) -> Result<ProbabilityVector, EntropyError> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(EntropyError::ZeroShots);
    }
    ProbabilityVector::new(counts.iter().map(|&c| c as f64 / total as f64).collect())
}

/// One run of the conjugate-pair measurement scenario.
#[derive(Debug, Clone, Serialize)]
pub struct PairTrial {
    /// Four-outcome distribution of the final ququart state.
    pub outcome_probabilities: [f64; 4],
    /// Computational-basis diagonal of qubit A's marginal.
    pub diag_direct: [f64; 2],
    /// Diagonal of qubit B's marginal after the Hadamard: the
    /// Hadamard-basis statistics of the prepared single-qubit state.
    pub diag_rotated: [f64; 2],
    /// The bound evaluated on the exact marginal diagonals.
    pub exact: InequalityReport,
    /// Sampled outcome counts, when shots were requested.
    pub counts: Option<[u64; 4]>,
    /// The bound evaluated on plug-in frequency estimates.
    pub sampled: Option<InequalityReport>,
}

/// Runs the end-to-end conjugate-pair scenario for a single-qubit target
/// state `v`:
///
/// 1. prepare both encoded qubits in `v` ([`identical_prep`]);
/// 2. apply the compiled Hadamard line to qubit B;
/// 3. read both marginal diagonals off one four-outcome measurement --
///    qubit A gives the computational-basis statistics of `v`, qubit B the
///    Hadamard-basis statistics.
///
/// The exact-path margin equals `check_renyi(v, alpha)` (and
/// [`check_log2`] at `alpha = 1`) up to rounding. With `noise` the whole
/// pipeline runs on the lowered physical schedule with perturbed angles, so
/// the marginals are no longer an exact conjugate pair and the bound may
/// genuinely fail; such failures indicate noise, not arithmetic.
pub fn conjugate_pair_trial(
    target: BlochVector,
    alpha: f64,
    shots: Option<u64>,
    sample_seed: u64,
    noise: Option<&NoiseModel>,
) -> Result<PairTrial, EntropyError> {
    let angles = identical_prep(target)?;
    let pipeline = angles.schedule().then(hadamard_b_line());
    let psi = match noise {
        None => pipeline.apply(&PureState4::ground()),
        Some(model) => pipeline
            .lowered()
            .apply_with_noise(&PureState4::ground(), model),
    };
    let p = psi.probabilities();
    let diag_direct = [p[0] + p[1], p[2] + p[3]];
    let diag_rotated = [p[0] + p[2], p[1] + p[3]];
    let exact = pair_report(
        &distribution(&diag_rotated),
        &distribution(&diag_direct),
        alpha,
        1.0,
    )?;
    let (counts, sampled) = match shots {
        None => (None, None),
        Some(shots) => {
            let counts = sample_shots(&psi, shots, sample_seed)?;
            let total: u64 = counts.iter().sum();
            let marginal = |a: u64, b: u64| (a + b) as f64 / total as f64;
            let est_direct = ProbabilityVector::new(vec![
                marginal(counts[0], counts[1]),
                marginal(counts[2], counts[3]),
            ])?;
            let est_rotated = ProbabilityVector::new(vec![
                marginal(counts[0], counts[2]),
                marginal(counts[1], counts[3]),
            ])?;
            let sampled = pair_report(&est_rotated, &est_direct, alpha, 1.0)?;
            (Some(counts), Some(sampled))
        }
    };
    Ok(PairTrial {
        outcome_probabilities: p,
        diag_direct,
        diag_rotated,
        exact,
        counts,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pv(values: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn shannon_matches_textbook_values() {
        assert_relative_eq!(shannon(&pv(&[0.5, 0.5])), 1.0, epsilon = 1e-15);
        assert_relative_eq!(shannon(&pv(&[0.25; 4])), 2.0, epsilon = 1e-15);
        assert_relative_eq!(shannon(&pv(&[1.0, 0.0])), 0.0, epsilon = 1e-15);
        // Dyadic probabilities give an exact entropy: 1/2 + 2/4 + 2*3/8.
        assert_relative_eq!(
            shannon(&pv(&[0.5, 0.25, 0.125, 0.125])),
            1.75,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            shannon(&pv(&[0.8, 0.2])),
            0.7219280948873623,
            epsilon = 1e-15
        );
    }

    #[test]
    fn renyi_hits_reference_points_across_the_order_range() {
        let p = pv(&[0.8, 0.2]);
        // Collision entropy: -log2(0.64 + 0.04).
        assert_relative_eq!(renyi(&p, 2.0).unwrap(), 0.5563933485243852, epsilon = 1e-15);
        // Max-entropy counts support.
        assert_relative_eq!(renyi(&p, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            renyi(&pv(&[0.5, 0.5, 0.0, 0.0]), 0.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        // Min-entropy looks at the largest probability.
        assert_relative_eq!(
            renyi(&p, f64::INFINITY).unwrap(),
            0.3219280948873623,
            epsilon = 1e-15
        );
        // The Shannon branch is literally the shannon function.
        assert_eq!(renyi(&p, 1.0).unwrap(), shannon(&p));
        assert_eq!(renyi(&p, 1.0 + 1e-9).unwrap(), shannon(&p));
        // Near (but outside) the branch window the formula approaches it.
        assert_relative_eq!(renyi(&p, 1.0 + 1e-6).unwrap(), shannon(&p), epsilon = 1e-5);
    }

    #[test]
    fn renyi_rejects_orders_outside_the_domain() {
        let p = pv(&[0.5, 0.5]);
        assert!(matches!(
            renyi(&p, -0.5),
            Err(EntropyError::OrderOutOfDomain { .. })
        ));
        assert!(matches!(
            renyi(&p, f64::NAN),
            Err(EntropyError::OrderOutOfDomain { .. })
        ));
    }

    #[test]
    fn conjugate_order_pairs_the_expected_values() {
        assert_eq!(conjugate_order(1.0).unwrap(), 1.0);
        assert_relative_eq!(conjugate_order(2.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(conjugate_order(0.75).unwrap(), 1.5, epsilon = 1e-15);
        assert_eq!(conjugate_order(0.5).unwrap(), f64::INFINITY);
        assert_eq!(conjugate_order(f64::INFINITY).unwrap(), 0.5);
        assert!(matches!(
            conjugate_order(0.3),
            Err(EntropyError::ConjugateUndefined { .. })
        ));
    }

    #[test]
    fn probability_vector_validation_catches_each_failure_mode() {
        assert!(matches!(
            ProbabilityVector::new(vec![]),
            Err(EntropyError::EmptyDistribution)
        ));
        assert!(matches!(
            ProbabilityVector::new(vec![0.5, -0.1, 0.6]),
            Err(EntropyError::NegativeProbability { .. })
        ));
        assert!(matches!(
            ProbabilityVector::new(vec![0.5, 0.4]),
            Err(EntropyError::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbabilityVector::new(vec![f64::NAN, 1.0]),
            Err(EntropyError::NonFiniteProbability { .. })
        ));
        // A tiny negative from rounding clamps to zero.
        let p = ProbabilityVector::new(vec![1.0, -1e-13]).unwrap();
        assert_eq!(p.as_slice()[1], 0.0);
        assert_relative_eq!(
            shannon(&ProbabilityVector::uniform(8).unwrap()),
            3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn shannon_bound_is_tight_at_both_basis_eigenstates() {
        // A computational eigenstate: zero direct entropy, full rotated.
        let pole = BlochVector::new(0.0, 0.0, 1.0).density().unwrap();
        let r = check_log2(&pole);
        assert_relative_eq!(r.margin_bits, 0.0, epsilon = 1e-12);
        assert!(r.satisfied);
        // A Hadamard eigenstate: the roles swap.
        let equator = BlochVector::new(1.0, 0.0, 0.0).density().unwrap();
        assert_relative_eq!(check_log2(&equator).margin_bits, 0.0, epsilon = 1e-12);
        // The maximally mixed state doubles the bound.
        let mixed = QubitDensity::maximally_mixed();
        assert_relative_eq!(check_log2(&mixed).margin_bits, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn shannon_margin_ignores_the_y_component() {
        for (x, y, z) in [(0.3, 0.5, 0.2), (0.0, 0.9, 0.1), (-0.4, 0.6, -0.3)] {
            let with_y = check_log2(&BlochVector::new(x, y, z).density().unwrap());
            let flipped = check_log2(&BlochVector::new(x, -y, z).density().unwrap());
            let without = check_log2(&BlochVector::new(x, 0.0, z).density().unwrap());
            assert_eq!(with_y.margin_bits, flipped.margin_bits);
            assert_eq!(with_y.margin_bits, without.margin_bits);
        }
    }

    #[test]
    fn renyi_check_at_order_one_is_exactly_the_shannon_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let sigma = BlochVector::sample_ball(&mut rng).density().unwrap();
            let shannon_report = check_log2(&sigma);
            let renyi_report = check_renyi(&sigma, 1.0).unwrap();
            assert_eq!(shannon_report.lhs_bits, renyi_report.lhs_bits);
            assert_eq!(shannon_report.margin_bits, renyi_report.margin_bits);
        }
    }

    #[test]
    fn renyi_check_reports_the_smaller_order_assignment() {
        let sigma = BlochVector::new(0.3, -0.2, 0.8).density().unwrap();
        let alpha = 3.0;
        let beta = conjugate_order(alpha).unwrap();
        let rotated = distribution(&sigma.conjugate_by(&hadamard2()).diagonal());
        let direct = distribution(&sigma.diagonal());
        let forward = renyi(&rotated, alpha).unwrap() + renyi(&direct, beta).unwrap();
        let swapped = renyi(&rotated, beta).unwrap() + renyi(&direct, alpha).unwrap();
        let report = check_renyi(&sigma, alpha).unwrap();
        assert_eq!(report.lhs_bits, forward.min(swapped));
        assert!(forward != swapped, "test state should break the symmetry");
    }

    #[test]
    fn two_bit_bound_is_tight_on_the_ground_state() {
        let r = check_log4(&PureState4::ground());
        assert_relative_eq!(r.margin_bits, 0.0, epsilon = 1e-12);
        assert!(r.satisfied);
        assert_relative_eq!(r.bound_bits, 2.0);
    }

    #[test]
    fn compiled_line_and_exact_hadamard_agree_inside_the_two_bit_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let psi = PureState4::sample_haar(&mut rng);
            let via_line = check_log4(&psi);
            let rotated_exact =
                distribution(&psi.evolve(&Gate::HadamardBoth.target()).probabilities());
            let direct = distribution(&psi.probabilities());
            let lhs_exact = shannon(&rotated_exact) + shannon(&direct);
            assert_relative_eq!(via_line.lhs_bits, lhs_exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn sampling_is_seeded_and_conserves_shots() {
        let psi = PureState4::normalized(crate::CVector4::new(
            crate::C64::new(0.5f64.sqrt(), 0.0),
            crate::C64::new(0.5, 0.0),
            crate::C64::new(0.125f64.sqrt(), 0.0),
            crate::C64::new(0.125f64.sqrt(), 0.0),
        ))
        .unwrap();
        let counts = sample_shots(&psi, 100_000, 9).unwrap();
        assert_eq!(counts, sample_shots(&psi, 100_000, 9).unwrap());
        assert_ne!(counts, sample_shots(&psi, 100_000, 10).unwrap());
        assert_eq!(counts.iter().sum::<u64>(), 100_000);
        let estimate = shannon(&frequencies(&counts).unwrap());
        assert!(
            (estimate - 1.75).abs() < 0.02,
            "plug-in estimate {estimate} strays from 1.75"
        );
        assert!(matches!(
            sample_shots(&psi, 0, 0),
            Err(EntropyError::ZeroShots)
        ));
    }

    #[test]
    fn pair_trial_reproduces_the_direct_qubit_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let target = BlochVector::sample_ball(&mut rng);
            let trial = conjugate_pair_trial(target, 1.0, None, 0, None).unwrap();
            let direct = check_log2(&target.density().unwrap());
            assert!(
                (trial.exact.margin_bits - direct.margin_bits).abs() < 1e-12,
                "pipeline margin {} vs direct {}",
                trial.exact.margin_bits,
                direct.margin_bits
            );
            let sum: f64 = trial.outcome_probabilities.iter().sum();
            assert_relative_eq!(sum, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pair_trial_sampled_margin_converges_to_the_exact_one() {
        let target = BlochVector::new(0.4, -0.3, 0.5);
        let trial = conjugate_pair_trial(target, 1.0, Some(1_000_000), 77, None).unwrap();
        let sampled = trial.sampled.unwrap();
        assert!(
            (sampled.lhs_bits - trial.exact.lhs_bits).abs() < 0.01,
            "sampled lhs {} vs exact {}",
            sampled.lhs_bits,
            trial.exact.lhs_bits
        );
        assert_eq!(trial.counts.unwrap().iter().sum::<u64>(), 1_000_000);
    }

    #[test]
    fn silent_noise_leaves_the_pair_trial_margin_unchanged() {
        let target = BlochVector::new(0.2, 0.3, -0.6);
        let clean = conjugate_pair_trial(target, 1.0, None, 0, None).unwrap();
        let silent = NoiseModel::new(0.0, 123).unwrap();
        let noisy = conjugate_pair_trial(target, 1.0, None, 0, Some(&silent)).unwrap();
        assert!(
            (clean.exact.margin_bits - noisy.exact.margin_bits).abs() < 1e-12,
            "zero-strength noise shifted the margin"
        );
    }

    proptest! {
        #[test]
        fn renyi_is_nonincreasing_in_its_order(
            raw in proptest::collection::vec(1e-6f64..1.0, 4),
            a in 0.0f64..5.0,
            d in 0.01f64..3.0,
        ) {
            let sum: f64 = raw.iter().sum();
            let p = ProbabilityVector::new(raw.iter().map(|v| v / sum).collect()).unwrap();
            let lower = renyi(&p, a).unwrap();
            let higher = renyi(&p, a + d).unwrap();
            prop_assert!(lower >= higher - 1e-9,
                "R_{a}={lower} < R_{}={higher}", a + d);
        }

        #[test]
        fn conjugate_order_is_an_involution(alpha in 0.51f64..20.0) {
            let back = conjugate_order(conjugate_order(alpha).unwrap()).unwrap();
            prop_assert!((back - alpha).abs() < 1e-9 * alpha.max(1.0));
        }

        #[test]
        fn shannon_bound_holds_across_the_bloch_ball(seed in 0u64..2000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sigma = BlochVector::sample_ball(&mut rng).density().unwrap();
            let r = check_log2(&sigma);
            prop_assert!(r.satisfied, "margin {} at bloch {:?}", r.margin_bits, sigma.bloch());
        }

        #[test]
        fn two_bit_bound_holds_for_haar_states(seed in 0u64..2000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = PureState4::sample_haar(&mut rng);
            let r = check_log4(&psi);
            prop_assert!(r.satisfied, "margin {}", r.margin_bits);
        }
    }
}
