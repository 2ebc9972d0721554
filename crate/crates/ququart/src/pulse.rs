//! The pulse engine: two-level rotations inside the four-level system,
//! schedules of such rotations, axis lowering, and a multiplicative angle
//! noise model.
//!
//! A hardware pulse drives a single transition |j> <-> |k| and realizes
//!
//! ```text
//! Rx[jk](theta) = exp(-i theta/2 (|j><k| + |k><j|))
//! ```
//!
//! which acts as the 2x2 x-rotation on span{|j>, |k>} and as the identity
//! on the other two levels. Every such pulse has determinant +1, so any
//! schedule product lies in SU(4) -- the root of the controlled-NOT
//! obstruction explored in [`crate::gates`].
//!
//! y-axis rotations are not primitive: they are *lowered* to three x pulses
//! through an ancillary level `l` distinct from `j` and `k`:
//!
//! ```text
//! Ry[jk](theta) = Rx[jl](pi) . Rx[kl](theta) . Rx[jl](3 pi)
//! ```
//!
//! (operator order; the rightmost factor acts first). The identity is exact
//! for every choice of ancilla.
//!
//! # Ordering convention
//!
//! A [`PulseSchedule`] stores pulses in *time order*: the first element is
//! the first pulse applied. Written equations compose operators the other
//! way around (rightmost first); this module is the single place where the
//! two conventions meet, and every sequence here is stored time-ordered.

use crate::linalg::{CMatrix4, C64};
use crate::state::PureState4;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PulseError {
    #[error("level {level} out of range for a four-level system")]
    LevelOutOfRange { level: u8 },
    #[error("transition needs two distinct levels, got {level} twice")]
    DegenerateTransition { level: u8 },
    #[error("ancillary level {ancilla} collides with the driven transition")]
    AncillaOnTransition { ancilla: u8 },
    #[error("relative noise strength must be finite and nonnegative, got {sigma}")]
    InvalidNoiseStrength { sigma: f64 },
}

/// Rotation axis of a pulse. Only `X` is a hardware primitive; `Y` pulses
/// are abstract placeholders that [`PulseSchedule::lowered`] expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// An ordered pair of distinct levels `lower < upper`, the subspace a pulse
/// drives.
///
/// x rotations are symmetric in the pair. A y rotation changes sign under
/// swapping, so constructors that accept levels in either order
/// ([`Pulse::y`]) compensate by negating the angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    lower: u8,
    upper: u8,
}

impl Transition {
    pub fn new(a: u8, b: u8) -> Result<Self, PulseError> {
        for level in [a, b] {
            if level > 3 {
                return Err(PulseError::LevelOutOfRange { level });
            }
        }
        if a == b {
            return Err(PulseError::DegenerateTransition { level: a });
        }
        Ok(Self {
            lower: a.min(b),
            upper: a.max(b),
        })
    }

    pub fn lower(&self) -> u8 {
        self.lower
    }

    pub fn upper(&self) -> u8 {
        self.upper
    }

    pub fn contains(&self, level: u8) -> bool {
        self.lower == level || self.upper == level
    }

    /// The smallest level outside the transition: the default ancilla for
    /// lowering a y rotation.
    pub fn default_ancilla(&self) -> u8 {
        (0..4u8)
            .find(|l| !self.contains(*l))
            .expect("two levels of four are always free")
    }

    /// All six transitions of the four-level system.
    pub fn all() -> [Transition; 6] {
        [
            Transition { lower: 0, upper: 1 },
            Transition { lower: 0, upper: 2 },
            Transition { lower: 0, upper: 3 },
            Transition { lower: 1, upper: 2 },
            Transition { lower: 1, upper: 3 },
            Transition { lower: 2, upper: 3 },
        ]
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lower, self.upper)
    }
}

/// One rotation by `angle` about `axis` on the two-level subspace of
/// `transition`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub axis: Axis,
    pub transition: Transition,
    pub angle: f64,
}

impl Pulse {
    /// An x pulse on levels `a`, `b` (order irrelevant).
    pub fn x(a: u8, b: u8, angle: f64) -> Result<Self, PulseError> {
        Ok(Self {
            axis: Axis::X,
            transition: Transition::new(a, b)?,
            angle,
        })
    }

    /// A y pulse on levels `a`, `b`. If given in descending order the angle
    /// is negated, preserving the operator.
    pub fn y(a: u8, b: u8, angle: f64) -> Result<Self, PulseError> {
        let transition = Transition::new(a, b)?;
        let angle = if a > b { -angle } else { angle };
        Ok(Self {
            axis: Axis::Y,
            transition,
            angle,
        })
    }

    /// The 4x4 unitary of this pulse.
    pub fn matrix(&self) -> CMatrix4 {
        let j = self.transition.lower as usize;
        let k = self.transition.upper as usize;
        let c = C64::new((self.angle / 2.0).cos(), 0.0);
        let s = (self.angle / 2.0).sin();
        let mut m = CMatrix4::identity();
        m[(j, j)] = c;
        m[(k, k)] = c;
        match self.axis {
            Axis::X => {
                m[(j, k)] = C64::new(0.0, -s);
                m[(k, j)] = C64::new(0.0, -s);
            }
            Axis::Y => {
                m[(j, k)] = C64::new(-s, 0.0);
                m[(k, j)] = C64::new(s, 0.0);
            }
        }
        m
    }

    /// Expands a y pulse into its exact three-x-pulse realization through
    /// `ancilla` (time order). x pulses are returned unchanged.
    pub fn lowered_through(&self, ancilla: u8) -> Result<Vec<Pulse>, PulseError> {
        match self.axis {
            Axis::X => Ok(vec![*self]),
            Axis::Y => {
                if ancilla > 3 {
                    return Err(PulseError::LevelOutOfRange { level: ancilla });
                }
                if self.transition.contains(ancilla) {
                    return Err(PulseError::AncillaOnTransition { ancilla });
                }
                let j = self.transition.lower;
                let k = self.transition.upper;
                Ok(vec![
                    Pulse::x(j, ancilla, 3.0 * PI)?,
                    Pulse::x(k, ancilla, self.angle)?,
                    Pulse::x(j, ancilla, PI)?,
                ])
            }
        }
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Angles print as multiples of pi: pulse tables are built from
        // quarter-pi fractions, and 3.5pi reads better than 10.9956.
        write!(
            f,
            "{}{} {:.6}pi",
            self.axis,
            self.transition,
            self.angle / PI
        )
    }
}

/// A time-ordered sequence of pulses: element 0 is applied first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSchedule {
    pulses: Vec<Pulse>,
}

impl PulseSchedule {
    pub fn new(pulses: Vec<Pulse>) -> Self {
        Self { pulses }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn push(&mut self, pulse: Pulse) {
        self.pulses.push(pulse);
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    /// True when every pulse is a hardware-primitive x pulse.
    pub fn is_physical(&self) -> bool {
        self.pulses.iter().all(|p| p.axis == Axis::X)
    }

    /// This schedule followed by `other`.
    pub fn then(&self, other: &PulseSchedule) -> PulseSchedule {
        let mut pulses = self.pulses.clone();
        pulses.extend_from_slice(&other.pulses);
        Self { pulses }
    }

    /// The x-only physical schedule: y pulses are expanded through their
    /// default ancilla (the smallest level off the transition).
    pub fn lowered(&self) -> PulseSchedule {
        let pulses = self
            .pulses
            .iter()
            .flat_map(|p| {
                p.lowered_through(p.transition.default_ancilla())
                    .expect("default ancilla never collides with its transition")
            })
            .collect();
        Self { pulses }
    }

    /// The product unitary of the whole schedule (later pulses multiply
    /// from the left).
    pub fn unitary(&self) -> CMatrix4 {
        self.pulses
            .iter()
            .fold(CMatrix4::identity(), |acc, p| p.matrix() * acc)
    }

    fn apply_impl(
        &self,
        state: &PureState4,
        mut angle_of: impl FnMut(&Pulse) -> f64,
    ) -> PureState4 {
        let mut state = state.clone();
        for pulse in &self.pulses {
            let perturbed = Pulse {
                angle: angle_of(pulse),
                ..*pulse
            };
            state = state.evolve(&perturbed.matrix());
        }
        state
    }

    /// Applies the schedule pulse by pulse.
    pub fn apply(&self, state: &PureState4) -> PureState4 {
        self.apply_impl(state, |p| p.angle)
    }

    /// Applies the schedule with every angle independently perturbed by the
    /// noise model. With `relative_sigma = 0` the perturbed angles equal the
    /// nominal ones bit for bit, so this reproduces [`PulseSchedule::apply`]
    /// exactly.
    pub fn apply_with_noise(&self, state: &PureState4, noise: &NoiseModel) -> PureState4 {
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        self.apply_impl(state, |p| {
            let eps: f64 = StandardNormal.sample(&mut rng);
            p.angle * (1.0 + noise.relative_sigma * eps)
        })
    }

    /// Draws a random x-only schedule: uniform transitions, angles uniform
    /// in [0, 4 pi).
    pub fn sample_x<R: Rng + ?Sized>(rng: &mut R, pulses: usize) -> PulseSchedule {
        let transitions = Transition::all();
        let pulses = (0..pulses)
            .map(|_| Pulse {
                axis: Axis::X,
                transition: transitions[rng.random_range(0..transitions.len())],
                angle: rng.random_range(0.0..4.0 * PI),
            })
            .collect();
        Self { pulses }
    }
}

impl fmt::Display for PulseSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pulse) in self.pulses.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:>3}. {}", i + 1, pulse)?;
        }
        Ok(())
    }
}

/// Multiplicative Gaussian angle noise: each pulse angle `theta` becomes
/// `theta * (1 + relative_sigma * eps)` with `eps` a standard normal draw
/// from a stream seeded by `seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    relative_sigma: f64,
    seed: u64,
}

impl NoiseModel {
    pub fn new(relative_sigma: f64, seed: u64) -> Result<Self, PulseError> {
        if !relative_sigma.is_finite() || relative_sigma < 0.0 {
            return Err(PulseError::InvalidNoiseStrength {
                sigma: relative_sigma,
            });
        }
        Ok(Self {
            relative_sigma,
            seed,
        })
    }

    pub fn relative_sigma(&self) -> f64 {
        self.relative_sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The model for trial `index` of a sweep: same strength, seed offset by
    /// the trial index so trials are independent yet reproducible.
    pub fn for_trial(&self, index: u64) -> NoiseModel {
        NoiseModel {
            relative_sigma: self.relative_sigma,
            seed: self.seed.wrapping_add(index),
        }
    }
}
