//! Preparation of two-qubit pure states with chosen reduced states.
//!
//! A pure joint state forces both marginals to the same purity, i.e. the
//! same Bloch radius `r`. Within that constraint any pair of directions is
//! reachable with a nine-pulse schedule built from three stages applied to
//! the ground state:
//!
//! 1. an entangling x pulse on levels (0,3) with angle `theta_0`, which
//!    pins both radii to `cos(theta_0)`;
//! 2. an x rotation of each encoded qubit (same-angle pulses on its two
//!    level pairs), setting the y components;
//! 3. a y rotation of each encoded qubit, setting the azimuth in the x-z
//!    plane.
//!
//! The resulting marginals have the closed form
//!
//! ```text
//! x = cos(t0) cos(t1) sin(t2)
//! y = -cos(t0) sin(t1)
//! z = cos(t0) cos(t1) cos(t2)
//! ```
//!
//! per qubit, which [`solve_angles`] inverts. Stage-3 pulses are kept as
//! abstract y rotations; [`PrepAngles::prepare_noisy`] lowers them to the
//! physical x-only schedule before perturbing angles, since noise acts on
//! hardware pulses, not on algebraic placeholders.

use crate::pulse::{NoiseModel, Pulse, PulseSchedule};
use crate::state::{BlochVector, PureState4};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// Default tolerance when comparing the two target radii: well above
/// floating-point noise from norm computations, far below anything
/// physically distinguishable.
pub const DEFAULT_RADIUS_TOL: f64 = 1e-9;

/// Radii below this are treated as exactly zero: both marginals are
/// maximally mixed and the direction angles are meaningless.
const DEGENERATE_RADIUS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PrepError {
    #[error(
        "marginals of a pure joint state share one Bloch radius; targets have {radius_a} vs {radius_b} (tolerance {tol})"
    )]
    RadiusMismatch {
        radius_a: f64,
        radius_b: f64,
        tol: f64,
    },
    #[error("target Bloch vector has norm {radius} > 1, outside the unit ball")]
    OutsideBlochBall { radius: f64 },
    #[error("target Bloch component is not finite")]
    NonFiniteTarget,
}

/// A feasible pair of marginal targets: both inside the unit ball, radii
/// equal within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepTarget {
    a: BlochVector,
    b: BlochVector,
}

impl PrepTarget {
    pub fn new(a: BlochVector, b: BlochVector) -> Result<Self, PrepError> {
        Self::with_tolerance(a, b, DEFAULT_RADIUS_TOL)
    }

    pub fn with_tolerance(a: BlochVector, b: BlochVector, tol: f64) -> Result<Self, PrepError> {
        for v in [&a, &b] {
            if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
                return Err(PrepError::NonFiniteTarget);
            }
            let radius = v.norm();
            if radius > 1.0 + tol {
                return Err(PrepError::OutsideBlochBall { radius });
            }
        }
        let (radius_a, radius_b) = (a.norm(), b.norm());
        if (radius_a - radius_b).abs() > tol {
            return Err(PrepError::RadiusMismatch {
                radius_a,
                radius_b,
                tol,
            });
        }
        Ok(Self { a, b })
    }

    /// Both qubits aimed at the same Bloch vector.
    pub fn identical(v: BlochVector) -> Result<Self, PrepError> {
        Self::new(v, v)
    }

    pub fn bloch_a(&self) -> BlochVector {
        self.a
    }

    pub fn bloch_b(&self) -> BlochVector {
        self.b
    }

    /// The common Bloch radius (midpoint of the two, which agree within
    /// tolerance).
    pub fn radius(&self) -> f64 {
        ((self.a.norm() + self.b.norm()) / 2.0).min(1.0)
    }
}

/// The five angles of the preparation schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrepAngles {
    /// Entangling angle on levels (0,3); the common radius is its cosine.
    pub entangling: f64,
    /// Stage-2 x-rotation angle of qubit A.
    pub x_rotation_a: f64,
    /// Stage-2 x-rotation angle of qubit B.
    pub x_rotation_b: f64,
    /// Stage-3 y-rotation angle of qubit A.
    pub y_rotation_a: f64,
    /// Stage-3 y-rotation angle of qubit B.
    pub y_rotation_b: f64,
}

impl PrepAngles {
    /// The nine-pulse preparation schedule in time order. Stage-3 rotations
    /// stay abstract y pulses; call [`PulseSchedule::lowered`] (or
    /// [`PrepAngles::prepare_noisy`], which does) for the physical line.
    pub fn schedule(&self) -> PulseSchedule {
        let x = |a, b, angle| Pulse::x(a, b, angle).expect("fixed levels are valid");
        let y = |a, b, angle| Pulse::y(a, b, angle).expect("fixed levels are valid");
        PulseSchedule::new(vec![
            x(0, 3, self.entangling),
            x(1, 3, self.x_rotation_a),
            x(0, 2, self.x_rotation_a),
            x(0, 1, self.x_rotation_b),
            x(2, 3, self.x_rotation_b),
            y(1, 3, self.y_rotation_a),
            y(0, 2, self.y_rotation_a),
            y(0, 1, self.y_rotation_b),
            y(2, 3, self.y_rotation_b),
        ])
    }

    /// The marginals this schedule produces, from the closed form.
    pub fn predicted_bloch(&self) -> (BlochVector, BlochVector) {
        let r = self.entangling.cos();
        let marginal = |t1: f64, t2: f64| BlochVector {
            x: r * t1.cos() * t2.sin(),
            y: -r * t1.sin(),
            z: r * t1.cos() * t2.cos(),
        };
        (
            marginal(self.x_rotation_a, self.y_rotation_a),
            marginal(self.x_rotation_b, self.y_rotation_b),
        )
    }

    /// Runs the schedule on the ground state.
    pub fn prepare(&self) -> PureState4 {
        self.schedule().apply(&PureState4::ground())
    }

    /// Runs the *lowered* schedule on the ground state with angle noise.
    pub fn prepare_noisy(&self, noise: &NoiseModel) -> PureState4 {
        self.schedule()
            .lowered()
            .apply_with_noise(&PureState4::ground(), noise)
    }

    /// Draws angles uniformly from the solver's canonical ranges:
    /// entangling in [0, pi/2], x rotations in [-pi/2, pi/2], y rotations
    /// in (-pi, pi].
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            entangling: rng.random_range(0.0..=FRAC_PI_2),
            x_rotation_a: rng.random_range(-FRAC_PI_2..=FRAC_PI_2),
            x_rotation_b: rng.random_range(-FRAC_PI_2..=FRAC_PI_2),
            y_rotation_a: rng.random_range(-PI..=PI),
            y_rotation_b: rng.random_range(-PI..=PI),
        }
    }
}

/// Inverts the closed-form marginals: angles whose schedule prepares the
/// target pair. Uses the canonical branch with `entangling` in [0, pi/2],
/// x rotations in [-pi/2, pi/2] and y rotations from `atan2`.
pub fn solve_angles(target: &PrepTarget) -> PrepAngles {
    let r = target.radius();
    let entangling = r.clamp(0.0, 1.0).acos();
    let solve_qubit = |v: BlochVector| -> (f64, f64) {
        if r < DEGENERATE_RADIUS {
            // The marginal is (numerically) maximally mixed; direction
            // angles are arbitrary, zero keeps the schedule minimal.
            return (0.0, 0.0);
        }
        let x_rotation = (-v.y / r).clamp(-1.0, 1.0).asin();
        let y_rotation = v.x.atan2(v.z);
        (x_rotation, y_rotation)
    };
    let (x_rotation_a, y_rotation_a) = solve_qubit(target.bloch_a());
    let (x_rotation_b, y_rotation_b) = solve_qubit(target.bloch_b());
    PrepAngles {
        entangling,
        x_rotation_a,
        x_rotation_b,
        y_rotation_a,
        y_rotation_b,
    }
}

/// Angles preparing both qubits in the same single-qubit state.
pub fn identical_prep(v: BlochVector) -> Result<PrepAngles, PrepError> {
    Ok(solve_angles(&PrepTarget::identical(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::QubitDensity;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn simulated_bloch(angles: &PrepAngles) -> (BlochVector, BlochVector) {
        let rho = angles.prepare().density();
        (rho.reduce_a().bloch(), rho.reduce_b().bloch())
    }

    fn assert_bloch_close(got: BlochVector, want: BlochVector, tol: f64) {
        assert!(
            (got.x - want.x).abs() < tol
                && (got.y - want.y).abs() < tol
                && (got.z - want.z).abs() < tol,
            "Bloch vector ({}, {}, {}) differs from ({}, {}, {})",
            got.x,
            got.y,
            got.z,
            want.x,
            want.y,
            want.z
        );
    }

    #[test]
    fn symmetric_reference_angles_give_the_tabulated_marginal() {
        // One-third, one-sixth, one-quarter turns of pi: the marginal works
        // out to (cos60 cos30 sin45, -cos60 sin30, cos60 cos30 cos45).
        let angles = PrepAngles {
            entangling: PI / 3.0,
            x_rotation_a: PI / 6.0,
            x_rotation_b: PI / 6.0,
            y_rotation_a: PI / 4.0,
            y_rotation_b: PI / 4.0,
        };
        let expected = BlochVector::new(0.30618621784789724, -0.25, 0.30618621784789724);
        let (pred_a, pred_b) = angles.predicted_bloch();
        assert_bloch_close(pred_a, expected, 1e-15);
        assert_bloch_close(pred_b, expected, 1e-15);
        let (sim_a, sim_b) = simulated_bloch(&angles);
        assert_bloch_close(sim_a, expected, 1e-12);
        assert_bloch_close(sim_b, expected, 1e-12);
    }

    #[test]
    fn schedule_has_nine_pulses_and_lowers_to_seventeen() {
        let angles = identical_prep(BlochVector::new(0.1, 0.2, 0.3)).unwrap();
        assert_eq!(angles.schedule().len(), 9);
        assert_eq!(angles.schedule().lowered().len(), 17);
        assert!(angles.schedule().lowered().is_physical());
    }

    #[test]
    fn solver_handles_the_equatorial_x_target() {
        let angles = identical_prep(BlochVector::new(0.6, 0.0, 0.0)).unwrap();
        assert_relative_eq!(angles.entangling, 0.9272952180016122, epsilon = 1e-15);
        assert_relative_eq!(angles.x_rotation_a, 0.0, epsilon = 1e-15);
        assert_relative_eq!(angles.y_rotation_a, FRAC_PI_2, epsilon = 1e-15);
        let (sim_a, sim_b) = simulated_bloch(&angles);
        assert_bloch_close(sim_a, BlochVector::new(0.6, 0.0, 0.0), 1e-12);
        assert_bloch_close(sim_b, BlochVector::new(0.6, 0.0, 0.0), 1e-12);
    }

    #[test]
    fn zero_radius_target_prepares_maximally_mixed_marginals() {
        let angles = identical_prep(BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(angles.entangling, FRAC_PI_2, epsilon = 1e-15);
        assert_relative_eq!(angles.x_rotation_a, 0.0);
        assert_relative_eq!(angles.y_rotation_b, 0.0);
        let rho = angles.prepare().density();
        let mixed = QubitDensity::maximally_mixed();
        assert!(rho.reduce_a().trace_distance(&mixed) < 1e-12);
        assert!(rho.reduce_b().trace_distance(&mixed) < 1e-12);
    }

    #[test]
    fn distinct_directions_with_a_common_radius_are_reachable() {
        let target = PrepTarget::new(
            BlochVector::new(0.0, 0.0, 0.7),
            BlochVector::new(0.7, 0.0, 0.0),
        )
        .unwrap();
        let angles = solve_angles(&target);
        let (sim_a, sim_b) = simulated_bloch(&angles);
        assert_bloch_close(sim_a, target.bloch_a(), 1e-12);
        assert_bloch_close(sim_b, target.bloch_b(), 1e-12);
    }

    #[test]
    fn mismatched_radii_and_escaping_targets_are_rejected() {
        let err = PrepTarget::new(
            BlochVector::new(1.0, 0.0, 0.0),
            BlochVector::new(0.0, 0.0, 0.5),
        )
        .unwrap_err();
        assert!(matches!(err, PrepError::RadiusMismatch { .. }));

        let err = PrepTarget::identical(BlochVector::new(0.9, 0.9, 0.9)).unwrap_err();
        assert!(matches!(err, PrepError::OutsideBlochBall { .. }));

        assert!(matches!(
            PrepTarget::identical(BlochVector::new(f64::NAN, 0.0, 0.0)),
            Err(PrepError::NonFiniteTarget)
        ));

        // Radii that differ within tolerance pass.
        assert!(PrepTarget::new(
            BlochVector::new(0.5, 0.0, 0.0),
            BlochVector::new(0.0, 0.5 + 1e-12, 0.0),
        )
        .is_ok());
    }

    #[test]
    fn identical_prep_yields_identical_marginals() {
        let angles = identical_prep(BlochVector::new(0.2, -0.4, 0.1)).unwrap();
        let rho = angles.prepare().density();
        assert!(rho.reduce_a().trace_distance(&rho.reduce_b()) < 1e-12);
    }

    #[test]
    fn silent_noise_on_the_lowered_schedule_matches_the_abstract_path() {
        let angles = identical_prep(BlochVector::new(0.3, 0.1, -0.2)).unwrap();
        let clean = angles.prepare();
        let silent = angles.prepare_noisy(&NoiseModel::new(0.0, 5).unwrap());
        // Lowering is exact, so the two paths agree to rounding.
        assert!((clean.amplitudes() - silent.amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn noise_perturbs_the_marginals_smoothly() {
        let angles = identical_prep(BlochVector::new(0.5, 0.2, 0.4)).unwrap();
        let clean = angles.prepare().density();
        let noisy = angles
            .prepare_noisy(&NoiseModel::new(0.01, 3).unwrap())
            .density();
        let shift = clean.reduce_a().trace_distance(&noisy.reduce_a());
        assert!(shift > 0.0, "1% angle noise must move the marginal");
        assert!(
            shift < 0.2,
            "1% angle noise should move it mildly, got {shift}"
        );
    }

    proptest! {
        #[test]
        fn simulated_marginals_match_the_closed_form(seed in 0u64..400) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let angles = PrepAngles::sample(&mut rng);
            let (pred_a, pred_b) = angles.predicted_bloch();
            let (sim_a, sim_b) = simulated_bloch(&angles);
            assert_bloch_close(sim_a, pred_a, 1e-12);
            assert_bloch_close(sim_b, pred_b, 1e-12);
        }

        #[test]
        fn solve_then_prepare_round_trips_ball_targets(seed in 0u64..400) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Two random directions sharing one radius.
            let radius = BlochVector::sample_ball(&mut rng).norm();
            let dir = |rng: &mut ChaCha8Rng| {
                let v = BlochVector::sample_ball(rng);
                let n = v.norm().max(1e-6);
                BlochVector::new(radius * v.x / n, radius * v.y / n, radius * v.z / n)
            };
            let target = PrepTarget::new(dir(&mut rng), dir(&mut rng)).unwrap();
            let angles = solve_angles(&target);
            let (pred_a, pred_b) = angles.predicted_bloch();
            assert_bloch_close(pred_a, target.bloch_a(), 1e-9);
            assert_bloch_close(pred_b, target.bloch_b(), 1e-9);
            let (sim_a, sim_b) = simulated_bloch(&angles);
            assert_bloch_close(sim_a, target.bloch_a(), 1e-9);
            assert_bloch_close(sim_b, target.bloch_b(), 1e-9);
        }
    }
}
