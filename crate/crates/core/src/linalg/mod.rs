//! Dense complex linear algebra primitives: Kronecker products, adjoints,
//! Hermitian eigendecomposition, matrix functions, and the antilinear
//! conjugation C (entrywise conjugation in the fixed standard basis).
//!
//! Everything operates on immutable values and returns fresh matrices; no
//! shared mutable state exists, so concurrent use needs no coordination.
//! Sparse storage, large-scale performance, and non-Hermitian eigenproblems
//! are out of scope.

mod eig;
mod matrix;

pub use eig::{
    exp_hermitian, hermitian_eig, sqrt_psd, HermitianEigen, HERMITICITY_TOL, PSD_TOL,
};
pub use matrix::{kron_vec, ComplexMatrix, C64};

use thiserror::Error;

/// Errors from the linear-algebra layer. Display output leads with the name
/// of the violated invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("NonSquare: operation requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("NotHermitian: max |A - A\u{2020}| entry {deviation:.3e} exceeds tolerance {HERMITICITY_TOL:.0e}")]
    NotHermitian { deviation: f64 },

    #[error("NegativeEigenvalue: eigenvalue {value:.3e} below -{PSD_TOL:.0e}; matrix is not positive semidefinite")]
    NegativeEigenvalue { value: f64 },

    #[error("BadLength: expected {expected} entries, got {actual}")]
    BadLength { expected: usize, actual: usize },

    #[error("NonFinite: matrix entries must be finite (no NaN or infinity)")]
    NonFinite,

    #[error("EmptyDimension: matrix dimensions must be positive")]
    EmptyDimension,

    #[error("NoConvergence: Jacobi sweep limit ({sweeps}) reached before convergence")]
    NoConvergence { sweeps: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cr(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    /// Determinant by LU with partial pivoting; test-only oracle independent
    /// of the eigendecomposition path.
    fn det_lu(a: &ComplexMatrix) -> C64 {
        assert!(a.is_square());
        let n = a.rows();
        let mut lu: Vec<Vec<C64>> = (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j)).collect())
            .collect();
        let mut det = cr(1.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| {
                    lu[i][k]
                        .norm()
                        .partial_cmp(&lu[j][k].norm())
                        .expect("finite entries")
                })
                .expect("non-empty range");
            if lu[pivot][k].norm() == 0.0 {
                return cr(0.0);
            }
            if pivot != k {
                lu.swap(pivot, k);
                det = -det;
            }
            det *= lu[k][k];
            for i in (k + 1)..n {
                let factor = lu[i][k] / lu[k][k];
                for j in k..n {
                    let sub = factor * lu[k][j];
                    lu[i][j] -= sub;
                }
            }
        }
        det
    }

    fn seeded_hermitian(seed: u64, n: usize) -> ComplexMatrix {
        let g = crate::rng::ginibre(&mut crate::rng::SplitMix64::new(seed), n);
        g.add(&g.adjoint()).scale_re(0.5)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_diagonals_expands_blockwise() {
        // Hand expansion: diag(1,2) ⊗ diag(3,4) = diag(3,4,6,8).
        let a = ComplexMatrix::diag_re(&[1.0, 2.0]);
        let b = ComplexMatrix::diag_re(&[3.0, 4.0]);
        assert_eq!(a.kron(&b), ComplexMatrix::diag_re(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_respects_factorized_products() {
        let mut rng = crate::rng::SplitMix64::new(11);
        let a = crate::rng::ginibre(&mut rng, 3);
        let b = crate::rng::ginibre(&mut rng, 3);
        let v: Vec<C64> = (0..3).map(|_| rng.next_c64()).collect();
        let w: Vec<C64> = (0..3).map(|_| rng.next_c64()).collect();
        let lhs = a.kron(&b).mul_vec(&kron_vec(&v, &w));
        let rhs = kron_vec(&a.mul_vec(&v), &b.mul_vec(&w));
        let max = lhs
            .iter()
            .zip(&rhs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(max <= 1e-12, "max deviation {max:e}");
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        assert_eq!(ComplexMatrix::identity(3).adjoint(), ComplexMatrix::identity(3));
        let a = ComplexMatrix::new(2, 2, vec![cr(0.0), c(0.0, 1.0), cr(0.0), cr(0.0)]).unwrap();
        let expected =
            ComplexMatrix::new(2, 2, vec![cr(0.0), cr(0.0), c(0.0, -1.0), cr(0.0)]).unwrap();
        assert_eq!(a.adjoint(), expected);
        // Involution on a random matrix.
        let r = crate::rng::ginibre(&mut crate::rng::SplitMix64::new(3), 4);
        assert_eq!(r.adjoint().adjoint(), r);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(3).trace().unwrap(), cr(3.0));
        let d = ComplexMatrix::diag(&[c(1.0, 1.0), cr(2.0)]);
        assert_eq!(d.trace().unwrap(), c(3.0, 1.0));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(rect.trace(), Err(LinalgError::NonSquare { .. })));
    }

    #[test]
    fn trace_is_cyclic() {
        let mut rng = crate::rng::SplitMix64::new(17);
        let a = crate::rng::ginibre(&mut rng, 4);
        let b = crate::rng::ginibre(&mut rng, 4);
        let ab = a.mul(&b).trace().unwrap();
        let ba = b.mul(&a).trace().unwrap();
        assert!((ab - ba).norm() <= 1e-12);
    }

    #[test]
    fn eig_of_real_diagonal_sorts_ascending() {
        let eig = hermitian_eig(&ComplexMatrix::diag_re(&[2.0, -1.0])).unwrap();
        assert_eq!(eig.eigenvalues(), &[-1.0, 2.0]);
        // Eigenvectors are the permuted identity, phase-fixed positive.
        assert!((eig.eigenvectors().get(1, 0) - cr(1.0)).norm() <= 1e-15);
        assert!((eig.eigenvectors().get(0, 1) - cr(1.0)).norm() <= 1e-15);
    }

    #[test]
    fn eig_of_pauli_x_matches_characteristic_polynomial() {
        // λ² - 1 = 0 by hand.
        let x = ComplexMatrix::new(2, 2, vec![cr(0.0), cr(1.0), cr(1.0), cr(0.0)]).unwrap();
        let eig = hermitian_eig(&x).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() <= 1e-14);
        assert!((eig.eigenvalues()[1] - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        for seed in 0..4u64 {
            let a = seeded_hermitian(100 + seed, 6);
            let eig = hermitian_eig(&a).unwrap();
            assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-11);
            assert!(eig.eigenvectors().unitarity_deviation() <= 1e-12);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::new(2, 2, vec![cr(0.0), cr(1.0), cr(0.0), cr(0.0)]).unwrap();
        assert!(matches!(
            hermitian_eig(&a),
            Err(LinalgError::NotHermitian { .. })
        ));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eig(&rect),
            Err(LinalgError::NonSquare { .. })
        ));
    }

    #[test]
    fn exp_at_zero_scale_is_identity() {
        let a = seeded_hermitian(7, 4);
        let e = exp_hermitian(&a, 0.0).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-13);
    }

    #[test]
    fn exp_of_diagonal_matches_scalar_exponentials() {
        let a = ComplexMatrix::diag_re(&[0.0, 2.0f64.ln()]);
        let e = exp_hermitian(&a, -1.0).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::diag_re(&[1.0, 0.5])) <= 1e-14);
    }

    #[test]
    fn exp_determinant_matches_trace_exponential() {
        // det(exp(s·A)) = exp(s·tr A), determinant from the LU oracle.
        let a = seeded_hermitian(23, 5);
        let s = 0.7;
        let det = det_lu(&exp_hermitian(&a, s).unwrap());
        let expected = (s * a.trace().unwrap().re).exp();
        assert!((det.re - expected).abs() <= 1e-10 * expected.abs());
        assert!(det.im.abs() <= 1e-10);
    }

    #[test]
    fn exp_inverse_scale_gives_identity() {
        let a = seeded_hermitian(31, 5);
        let prod = exp_hermitian(&a, 0.9)
            .unwrap()
            .mul(&exp_hermitian(&a, -0.9).unwrap());
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(5)) <= 1e-10);
    }

    #[test]
    fn sqrt_examples() {
        let i = ComplexMatrix::identity(3);
        assert!(sqrt_psd(&i).unwrap().max_abs_diff(&i) <= 1e-14);
        let d = ComplexMatrix::diag_re(&[4.0, 9.0]);
        assert!(
            sqrt_psd(&d)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::diag_re(&[2.0, 3.0]))
                <= 1e-14
        );
    }

    #[test]
    fn sqrt_squares_back_to_input() {
        let b = crate::rng::ginibre(&mut crate::rng::SplitMix64::new(41), 5);
        let a = b.adjoint().mul(&b);
        let r = sqrt_psd(&a).unwrap();
        assert!(r.mul(&r).max_abs_diff(&a) <= 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative_eigenvalues() {
        let a = ComplexMatrix::diag_re(&[1.0, -0.5]);
        assert!(matches!(
            sqrt_psd(&a),
            Err(LinalgError::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn conjugation_is_antilinear_involution() {
        let real = ComplexMatrix::diag_re(&[1.0, 2.0]);
        assert_eq!(real.conj(), real);
        let v = crate::rng::ginibre(&mut crate::rng::SplitMix64::new(5), 3);
        let i_v = v.scale(c(0.0, 1.0));
        assert!(i_v.conj().max_abs_diff(&v.conj().scale(c(0.0, -1.0))) == 0.0);
        assert_eq!(v.conj().conj(), v);
    }

    #[test]
    fn frobenius_norm_squared_equals_trace_of_gram() {
        let a = crate::rng::ginibre(&mut crate::rng::SplitMix64::new(53), 4);
        let gram_trace = a.adjoint().mul(&a).trace().unwrap();
        assert!(gram_trace.re >= 0.0);
        assert!((gram_trace.re - a.frobenius_norm().powi(2)).abs() <= 1e-12 * gram_trace.re.max(1.0));
        assert!(gram_trace.im.abs() <= 1e-12);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![cr(1.0); 3]),
            Err(LinalgError::BadLength { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(LinalgError::EmptyDimension)
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(LinalgError::NonFinite)
        ));
    }
}
