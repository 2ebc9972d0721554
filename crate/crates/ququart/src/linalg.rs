//! Shared complex linear algebra: type aliases, global-phase-aware unitary
//! comparison, and Hermitian eigenvalue helpers.
//!
//! Everything in the crate works with statically sized `nalgebra` matrices
//! over `Complex<f64>`, so dimension mismatches are compile errors rather
//! than runtime ones.

use nalgebra::allocator::Allocator;
use nalgebra::{DefaultAllocator, DimName, OMatrix, OVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix2 = nalgebra::Matrix2<C64>;
pub type CMatrix4 = nalgebra::Matrix4<C64>;
pub type CVector2 = nalgebra::Vector2<C64>;
pub type CVector4 = nalgebra::Vector4<C64>;

/// Tolerance for identities that hold in exact arithmetic (unitary products,
/// schedule equivalences, normalization of evolved states).
pub const TOL_EXACT: f64 = 1e-12;

/// Tolerance for spectral quantities (eigenvalues, trace distances), which
/// accumulate a little more rounding than direct entrywise arithmetic.
pub const TOL_SPECTRAL: f64 = 1e-10;

/// Best alignment of `u` against `v` over a global phase.
#[derive(Debug, Clone, Copy)]
pub struct PhaseAlignment {
    /// Frobenius norm of `u - phase * v`.
    pub distance: f64,
    /// Unit complex number maximizing the overlap, `1` when the overlap
    /// trace vanishes (orthogonal matrices have no preferred alignment).
    pub phase: C64,
}

/// Aligns `u` against `v` over a global phase and reports the residual.
///
/// The optimal phase is `tr(v† u) / |tr(v† u)|`. The residual is computed
/// entrywise rather than through the closed form `sqrt(2n - 2|tr|)`: the
/// closed form cancels catastrophically near zero and cannot certify
/// agreement below ~1e-8, while the entrywise residual reaches machine
/// precision.
pub fn phase_align<D: DimName>(u: &OMatrix<C64, D, D>, v: &OMatrix<C64, D, D>) -> PhaseAlignment
where
    DefaultAllocator: Allocator<D, D>,
{
    let overlap = (v.adjoint() * u).trace();
    let phase = if overlap.norm() <= f64::EPSILON {
        C64::new(1.0, 0.0)
    } else {
        overlap / overlap.norm()
    };
    let distance = (u - v.map(|e| e * phase)).norm();
    PhaseAlignment { distance, phase }
}

/// Frobenius distance between `u` and `v` minimized over a global phase.
///
/// This is a metric on the projective unitary group: it vanishes exactly
/// when `u = e^{i phi} v`, and is insensitive to the phase convention of
/// either argument.
pub fn phase_distance<D: DimName>(u: &OMatrix<C64, D, D>, v: &OMatrix<C64, D, D>) -> f64
where
    DefaultAllocator: Allocator<D, D>,
{
    phase_align(u, v).distance
}

/// Frobenius norm of `u† u - 1`; zero for exactly unitary matrices.
pub fn unitarity_defect<D: DimName>(u: &OMatrix<C64, D, D>) -> f64
where
    DefaultAllocator: Allocator<D, D>,
{
    (u.adjoint() * u - OMatrix::<C64, D, D>::identity()).norm()
}

/// Largest entrywise deviation of `m` from its own adjoint.
pub fn hermiticity_defect<D: DimName>(m: &OMatrix<C64, D, D>) -> f64
where
    DefaultAllocator: Allocator<D, D>,
{
    (m - m.adjoint()).camax()
}

/// Eigenvalues of a Hermitian matrix, ascending. The caller is responsible
/// for hermiticity; only the Hermitian part influences the result.
pub fn hermitian_eigenvalues<D>(m: &OMatrix<C64, D, D>) -> OVector<f64, D>
where
    DefaultAllocator:
        Allocator<D, D> + Allocator<D> + Allocator<nalgebra::DimDiff<D, nalgebra::U1>>,
    D: DimName + nalgebra::DimSub<nalgebra::U1>,
{
    let mut eigenvalues = SymmetricEigen::new(m.clone_owned()).eigenvalues;
    eigenvalues.as_mut_slice().sort_by(f64::total_cmp);
    eigenvalues
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::{Matrix2, Matrix4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn phase_distance_vanishes_for_phase_equal_unitaries() {
        let u = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let phase = C64::from_polar(1.0, 0.7341);
        let v = u.map(|e| e * phase);
        assert!(phase_distance(&u, &v) < 1e-15);
        assert!(phase_distance(&v, &u) < 1e-15);
    }

    #[test]
    fn phase_distance_of_orthogonal_unitaries_uses_unit_phase() {
        // tr(X† I) = 0, so no phase helps: distance is ||I - X||_F = 2.
        let i2 = Matrix2::identity();
        let x = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let aligned = phase_align(&i2, &x);
        assert_relative_eq!(aligned.distance, 2.0, max_relative = 1e-15);
        assert_eq!(aligned.phase, C64::new(1.0, 0.0));
    }

    #[test]
    fn phase_distance_is_symmetric_and_triangular() {
        let u = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
        let v = Matrix2::new(c(0.6, 0.0), c(0.8, 0.0), c(-0.8, 0.0), c(0.6, 0.0));
        let w = Matrix2::identity();
        let duv = phase_distance(&u, &v);
        let dvu = phase_distance(&v, &u);
        assert_relative_eq!(duv, dvu, max_relative = 1e-12);
        assert!(phase_distance(&u, &w) <= duv + phase_distance(&v, &w) + 1e-12);
    }

    #[test]
    fn hermitian_eigenvalues_of_diagonal_matrix_are_sorted_entries() {
        let m = Matrix4::from_diagonal(&CVector4::new(
            c(0.4, 0.0),
            c(0.1, 0.0),
            c(0.3, 0.0),
            c(0.2, 0.0),
        ));
        let eigs = hermitian_eigenvalues(&m);
        let expected = [0.1, 0.2, 0.3, 0.4];
        for (got, want) in eigs.iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn hermitian_eigenvalues_handle_complex_off_diagonals() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = Matrix2::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0));
        let eigs = hermitian_eigenvalues(&m);
        assert_relative_eq!(eigs[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(eigs[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn unitarity_defect_flags_non_unitary_input() {
        let u = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert!(unitarity_defect(&u) < 1e-15);
        let not_u = u.map(|e| e * 1.01);
        assert!(unitarity_defect(&not_u) > 1e-3);
    }
}
