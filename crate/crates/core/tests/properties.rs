//! Property-based tests over randomly generated matrices and profiles.

use proptest::prelude::*;

use thermofield::linalg::{self, kron_vec, ComplexMatrix, C64};
use thermofield::liouville::{hs_inner, partial_trace_tilde, vectorize, HSOperator};
use thermofield::rigged::{classify, tensor_profile, DecayClass, DecayProfile};
use thermofield::tfd::tilde;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), dim * dim)
        .prop_map(move |entries| ComplexMatrix::new(dim, dim, entries).unwrap())
}

fn square() -> impl Strategy<Value = ComplexMatrix> {
    (2usize..=5).prop_flat_map(matrix)
}

fn hermitian() -> impl Strategy<Value = ComplexMatrix> {
    (2usize..=8)
        .prop_flat_map(matrix)
        .prop_map(|m| m.add(&m.adjoint()).scale_re(0.5))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(complex(), dim)
}

proptest! {
    #[test]
    fn adjoint_is_an_involution(a in square()) {
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(3), c in matrix(2)) {
        let left = a.kron(&b).kron(&c);
        let right = a.kron(&b.kron(&c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn kron_respects_products((a, b, v, w) in (matrix(3), matrix(3), vector(3), vector(3))) {
        let lhs = a.kron(&b).mul_vec(&kron_vec(&v, &w));
        let rhs = kron_vec(&a.mul_vec(&v), &b.mul_vec(&w));
        let max = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(max <= 1e-12);
    }

    #[test]
    fn gram_trace_is_the_squared_frobenius_norm(a in square()) {
        let gram = a.adjoint().mul(&a).trace().unwrap();
        prop_assert!(gram.re >= 0.0);
        prop_assert!((gram.re - a.frobenius_norm().powi(2)).abs() <= 1e-12 * gram.re.max(1.0));
    }

    #[test]
    fn eigendecomposition_reconstructs(h in hermitian()) {
        let eig = linalg::hermitian_eig(&h).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-11);
        prop_assert!(eig.eigenvectors().unitarity_deviation() <= 1e-12);
        let v = eig.eigenvectors();
        let lambda = ComplexMatrix::diag_re(eig.eigenvalues());
        prop_assert!(h.mul(v).max_abs_diff(&v.mul(&lambda)) <= 1e-12);
        let sorted = eig.eigenvalues().windows(2).all(|w| w[0] <= w[1]);
        prop_assert!(sorted);
    }

    #[test]
    fn exponential_inverts(h in hermitian(), s in -2.0f64..2.0) {
        // Bounded spectral scale keeps the absolute tolerance meaningful.
        let h = h.scale_re(1.0 / h.frobenius_norm().max(1.0));
        let product = linalg::exp_hermitian(&h, s).unwrap()
            .mul(&linalg::exp_hermitian(&h, -s).unwrap());
        prop_assert!(product.max_abs_diff(&ComplexMatrix::identity(h.rows())) <= 1e-10);
    }

    #[test]
    fn vectorization_is_an_isometry((a, b) in (2usize..=6).prop_flat_map(|d| (matrix(d), matrix(d)))) {
        let a = HSOperator::new(a).unwrap();
        let b = HSOperator::new(b).unwrap();
        let doubled = vectorize(&a).dot(&vectorize(&b)).unwrap();
        let hs = hs_inner(&a, &b).unwrap();
        prop_assert!((doubled - hs).norm() <= 1e-12);
    }

    #[test]
    fn vectorization_is_a_module_homomorphism((a, x, b) in (2usize..=5).prop_flat_map(|d| (matrix(d), matrix(d), matrix(d)))) {
        let direct = vectorize(&HSOperator::new(a.mul(&x).mul(&b)).unwrap());
        let transported = a.kron(&b.transpose())
            .mul_vec(vectorize(&HSOperator::new(x).unwrap()).components());
        let max = direct.components().iter().zip(&transported)
            .map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        prop_assert!(max <= 1e-12);
    }

    #[test]
    fn partial_trace_matches_the_gram((x,) in (2usize..=6).prop_flat_map(|d| (matrix(d),))) {
        let r = HSOperator::new(x).unwrap();
        let reduced = partial_trace_tilde(&vectorize(&r));
        let gram = r.matrix().mul(&r.matrix().adjoint());
        prop_assert!(reduced.matrix().max_abs_diff(&gram) <= 1e-12);
    }

    #[test]
    fn tilde_algebra_holds((a, b, alpha) in (2usize..=5).prop_flat_map(|d| (matrix(d), matrix(d), complex()))) {
        prop_assert_eq!(tilde(&tilde(&a).unwrap()).unwrap(), a.clone());
        let product = tilde(&a.mul(&b)).unwrap();
        prop_assert!(product.max_abs_diff(&tilde(&a).unwrap().mul(&tilde(&b).unwrap())) <= 1e-12);
        let linear = tilde(&a.scale(alpha).add(&b)).unwrap();
        let expected = tilde(&a).unwrap().scale(alpha.conj()).add(&tilde(&b).unwrap());
        prop_assert!(linear.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn test_space_tensor_stays_test_space(r1 in 0.0f64..0.99, r2 in 0.0f64..0.99, c1 in 0.1f64..5.0, c2 in 0.1f64..5.0) {
        let p = DecayProfile::geometric(r1, c1).unwrap();
        let q = DecayProfile::geometric(r2, c2).unwrap();
        let t = tensor_profile(&p, &q);
        prop_assert_eq!(classify(&t), DecayClass::TestSpace);
        // Spot-check envelope domination along the axes of the pair grid.
        for k in 0..20 {
            prop_assert!(t.bound(k) >= p.bound(k) * q.bound(0) - 1e-12);
            prop_assert!(t.bound(k) >= p.bound(0) * q.bound(k) - 1e-12);
        }
    }

    #[test]
    fn outside_dual_absorbs_everything(r in 1.05f64..4.0, a in -3.0f64..3.0) {
        let outside = DecayProfile::geometric(r, 1.0).unwrap();
        let power = DecayProfile::power(a, 1.0).unwrap();
        prop_assert_eq!(classify(&tensor_profile(&outside, &power)), DecayClass::OutsideDual);
        prop_assert_eq!(classify(&tensor_profile(&power, &outside)), DecayClass::OutsideDual);
    }
}
