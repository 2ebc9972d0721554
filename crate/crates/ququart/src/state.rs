//! States of the four-level system and of the two qubits it encodes.
//!
//! A single four-level system carries two qubits A and B through the index
//! map `level = 2a + b`, i.e. |0> = |00>, |1> = |01>, |2> = |10>,
//! |3> = |11>, with A the high bit and B the low bit. Reduced states of
//! either qubit are obtained by tracing over the other's bit, which at the
//! level of the 4x4 density matrix is a fixed pattern of entry sums.
//!
//! Bloch components follow the standard convention
//! `sigma = (1 + x X + y Y + z Z) / 2`, so `x = 2 Re sigma_01`,
//! `y = -2 Im sigma_01`, `z = sigma_00 - sigma_11`.

use crate::linalg::{
    hermitian_eigenvalues, hermiticity_defect, CMatrix2, CMatrix4, CVector4, C64, TOL_EXACT,
    TOL_SPECTRAL,
};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for constructor validation (normalization, hermiticity,
/// unit trace). Constructors with a `_with_tolerance` variant let callers
/// loosen this for data from noisy or sampled sources.
pub const DEFAULT_STATE_TOL: f64 = TOL_EXACT;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("state vector has norm {norm}, expected 1 within tolerance {tol}")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("cannot normalize a (numerically) zero vector")]
    ZeroVector,
    #[error("matrix deviates from its adjoint by {defect} (tolerance {tol})")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix has trace {trace}, expected 1 within tolerance {tol}")]
    TraceNotOne { trace: f64, tol: f64 },
    #[error("matrix has eigenvalue {min_eigenvalue}, below the positivity floor")]
    NotPositive { min_eigenvalue: f64 },
    #[error("Bloch vector has norm {norm} > 1; no qubit state lies outside the unit ball")]
    OutsideBlochBall { norm: f64 },
    #[error("level index {level} out of range for a four-level system")]
    LevelOutOfRange { level: usize },
}

/// A normalized pure state of the four-level system.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState4 {
    amplitudes: CVector4,
}

impl PureState4 {
    /// Wraps an amplitude vector, requiring unit norm within [`DEFAULT_STATE_TOL`].
    pub fn new(amplitudes: CVector4) -> Result<Self, StateError> {
        Self::with_tolerance(amplitudes, DEFAULT_STATE_TOL)
    }

    /// As [`PureState4::new`] with a caller-chosen normalization tolerance.
    pub fn with_tolerance(amplitudes: CVector4, tol: f64) -> Result<Self, StateError> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol {
            return Err(StateError::NotNormalized { norm, tol });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: CVector4) -> Result<Self, StateError> {
        let norm = amplitudes.norm();
        if norm < 1e-14 {
            return Err(StateError::ZeroVector);
        }
        Ok(Self {
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    /// The ground state |0> = |00>.
    pub fn ground() -> Self {
        Self::basis(0).expect("level 0 is always in range")
    }

    /// The computational basis state at `level` (0..=3).
    pub fn basis(level: usize) -> Result<Self, StateError> {
        if level > 3 {
            return Err(StateError::LevelOutOfRange { level });
        }
        let mut amplitudes = CVector4::zeros();
        amplitudes[level] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &CVector4 {
        &self.amplitudes
    }

    /// Computational-basis outcome probabilities |psi_m|^2.
    pub fn probabilities(&self) -> [f64; 4] {
        let a = &self.amplitudes;
        [
            a[0].norm_sqr(),
            a[1].norm_sqr(),
            a[2].norm_sqr(),
            a[3].norm_sqr(),
        ]
    }

    /// Inner product <self|other>.
    pub fn overlap(&self, other: &PureState4) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Applies a unitary. The caller guarantees unitarity; norm is preserved
    /// to machine precision and re-checked only in debug builds.
    pub fn evolve(&self, u: &CMatrix4) -> PureState4 {
        let amplitudes = u * self.amplitudes;
        debug_assert!(
            (amplitudes.norm() - 1.0).abs() < 1e-9,
            "evolution drifted off the sphere"
        );
        PureState4 { amplitudes }
    }

    /// The projector |psi><psi| as a density matrix.
    pub fn density(&self) -> DensityMatrix4 {
        let m = self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix4 { matrix: m }
    }

    /// Draws a Haar-random pure state (normalized complex Gaussian vector).
    pub fn sample_haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let amplitudes = CVector4::from_fn(|_, _| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im)
            });
            if let Ok(state) = Self::normalized(amplitudes) {
                return state;
            }
        }
    }
}

/// A validated density matrix of the four-level system: Hermitian, unit
/// trace, positive semidefinite (within tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    matrix: CMatrix4,
}

impl DensityMatrix4 {
    /// Validates hermiticity and unit trace within [`DEFAULT_STATE_TOL`] and
    /// positivity within a spectral tolerance.
    pub fn new(matrix: CMatrix4) -> Result<Self, StateError> {
        Self::with_tolerance(matrix, DEFAULT_STATE_TOL)
    }

    /// As [`DensityMatrix4::new`] with a caller-chosen tolerance for the
    /// hermiticity and trace checks. Positivity always uses a spectral
    /// floor of `-max(tol, 1e-10)` on the smallest eigenvalue.
    pub fn with_tolerance(matrix: CMatrix4, tol: f64) -> Result<Self, StateError> {
        let defect = hermiticity_defect(&matrix);
        if defect > tol {
            return Err(StateError::NotHermitian { defect, tol });
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > tol {
            return Err(StateError::TraceNotOne {
                trace: trace.re,
                tol,
            });
        }
        let min_eigenvalue = hermitian_eigenvalues(&matrix)[0];
        if min_eigenvalue < -tol.max(TOL_SPECTRAL) {
            return Err(StateError::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.matrix
    }

    /// Diagonal entries: the computational-basis outcome distribution.
    pub fn diagonal(&self) -> [f64; 4] {
        let m = &self.matrix;
        [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re]
    }

    /// tr(rho^2), which for Hermitian rho equals the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.matrix.norm_squared()
    }

    /// Reduced state of qubit A (the high bit): trace over B.
    pub fn reduce_a(&self) -> QubitDensity {
        let m = &self.matrix;
        QubitDensity {
            matrix: CMatrix2::new(
                m[(0, 0)] + m[(1, 1)],
                m[(0, 2)] + m[(1, 3)],
                m[(2, 0)] + m[(3, 1)],
                m[(2, 2)] + m[(3, 3)],
            ),
        }
    }

    /// Reduced state of qubit B (the low bit): trace over A.
    pub fn reduce_b(&self) -> QubitDensity {
        let m = &self.matrix;
        QubitDensity {
            matrix: CMatrix2::new(
                m[(0, 0)] + m[(2, 2)],
                m[(0, 1)] + m[(2, 3)],
                m[(1, 0)] + m[(3, 2)],
                m[(1, 1)] + m[(3, 3)],
            ),
        }
    }
}

/// A validated single-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitDensity {
    matrix: CMatrix2,
}

impl QubitDensity {
    pub fn new(matrix: CMatrix2) -> Result<Self, StateError> {
        Self::with_tolerance(matrix, DEFAULT_STATE_TOL)
    }

    pub fn with_tolerance(matrix: CMatrix2, tol: f64) -> Result<Self, StateError> {
        let defect = hermiticity_defect(&matrix);
        if defect > tol {
            return Err(StateError::NotHermitian { defect, tol });
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > tol {
            return Err(StateError::TraceNotOne {
                trace: trace.re,
                tol,
            });
        }
        // Positivity of a Hermitian unit-trace 2x2 matrix is |bloch| <= 1.
        let bloch_norm = Self { matrix }.bloch().norm();
        if bloch_norm > 1.0 + tol.max(TOL_SPECTRAL) {
            return Err(StateError::NotPositive {
                min_eigenvalue: (1.0 - bloch_norm) / 2.0,
            });
        }
        Ok(Self { matrix })
    }

    /// The state at the center of the Bloch ball, 1/2 of the identity.
    pub fn maximally_mixed() -> Self {
        Self {
            matrix: CMatrix2::identity().map(|e| e * 0.5),
        }
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.matrix
    }

    pub fn diagonal(&self) -> [f64; 2] {
        [self.matrix[(0, 0)].re, self.matrix[(1, 1)].re]
    }

    pub fn purity(&self) -> f64 {
        self.matrix.norm_squared()
    }

    /// Bloch components under `sigma = (1 + x X + y Y + z Z) / 2`.
    pub fn bloch(&self) -> BlochVector {
        let m = &self.matrix;
        BlochVector {
            x: 2.0 * m[(0, 1)].re,
            y: -2.0 * m[(0, 1)].im,
            z: m[(0, 0)].re - m[(1, 1)].re,
        }
    }

    /// The conjugated state `u sigma u†` (for unitary `u`).
    pub fn conjugate_by(&self, u: &CMatrix2) -> QubitDensity {
        QubitDensity {
            matrix: u * self.matrix * u.adjoint(),
        }
    }

    /// Trace distance `tr|a - b| / 2`, from the closed-form eigenvalues of
    /// the Hermitian 2x2 difference.
    pub fn trace_distance(&self, other: &QubitDensity) -> f64 {
        let d = self.matrix - other.matrix;
        let mid = (d[(0, 0)].re + d[(1, 1)].re) / 2.0;
        let radius = (((d[(0, 0)].re - d[(1, 1)].re) / 2.0).powi(2) + d[(0, 1)].norm_sqr()).sqrt();
        ((mid + radius).abs() + (mid - radius).abs()) / 2.0
    }
}

/// Bloch components (x, y, z) of a qubit state; valid states satisfy
/// x^2 + y^2 + z^2 <= 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// The density matrix `(1 + x X + y Y + z Z) / 2`; errors outside the
    /// unit ball (with a small spectral allowance).
    pub fn density(&self) -> Result<QubitDensity, StateError> {
        let norm = self.norm();
        if norm > 1.0 + TOL_SPECTRAL {
            return Err(StateError::OutsideBlochBall { norm });
        }
        Ok(QubitDensity {
            matrix: CMatrix2::new(
                C64::new((1.0 + self.z) / 2.0, 0.0),
                C64::new(self.x / 2.0, -self.y / 2.0),
                C64::new(self.x / 2.0, self.y / 2.0),
                C64::new((1.0 - self.z) / 2.0, 0.0),
            ),
        })
    }

    /// Draws uniformly from the unit ball (Gaussian direction, cube-root
    /// radius).
    pub fn sample_ball<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x: f64 = StandardNormal.sample(rng);
            let y: f64 = StandardNormal.sample(rng);
            let z: f64 = StandardNormal.sample(rng);
            let norm = (x * x + y * y + z * z).sqrt();
            if norm < 1e-12 {
                continue;
            }
            let radius = rng.random::<f64>().cbrt();
            return Self {
                x: radius * x / norm,
                y: radius * y / norm,
                z: radius * z / norm,
            };
        }
    }
}
