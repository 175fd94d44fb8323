//! Thermo field dynamics at finite dimension: Gibbs states, thermal vacua,
//! thermal averages by the operator and doubled-space routes, tilde
//! conjugation, and the Λ correspondence between test-space operators and
//! doubled vectors.
//!
//! The thermal vacuum is defined structurally as vectorize(√ρ), which makes
//! independence from the choice of spectral decomposition automatic; the
//! eigenbasis construction Σ √p_n e_n ⊗ ẽ_n appears only in tests as an
//! oracle. Thermal averages computed in either picture agree to 1e−10; that
//! equivalence is the central identity the verification suites exercise.
//!
//! Real-time/non-equilibrium dynamics, thermal Bogoliubov transformations,
//! KMS conditions, and the GNS construction are out of scope.

use thiserror::Error;

use crate::linalg::{self, C64, ComplexMatrix, LinalgError};
use crate::liouville::{
    self, DensityOperator, DoubledVector, HSOperator, LiouvilleError, SuperOperator,
};
use crate::rigged::{classify, DecayClass, DecayProfile};

/// Hermitian observables and Hamiltonians are accepted within this deviation.
pub const OBSERVABLE_TOL: f64 = 1e-10;

/// Imaginary parts of thermal averages beyond this signal a bug, not physics.
pub const IMAGINARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TfdError {
    #[error("NegativeBeta: inverse temperature must be finite and nonnegative, got {beta}")]
    NegativeBeta { beta: f64 },

    #[error("NonHermitianObservable: max |A - A\u{2020}| entry {deviation:.3e} exceeds tolerance {OBSERVABLE_TOL:.0e}")]
    NonHermitianObservable { deviation: f64 },

    #[error("DimensionMismatch: operands have dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("NotTestSpace: coefficient profile classifies as {class:?}, not TestSpace")]
    NotTestSpace { class: DecayClass },

    #[error("UncertifiedCoefficients: |entry[{index}]| = {value:.6e} exceeds profile bound {bound:.6e}")]
    UncertifiedCoefficients { index: usize, value: f64, bound: f64 },

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
}

/// Equilibrium state ρ = e^{−βH}/Z together with its ingredients.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    hamiltonian: ComplexMatrix,
    beta: f64,
    partition: f64,
    rho: DensityOperator,
}

impl ThermalState {
    /// Assemble from pieces that have already been cross-checked against the
    /// reconstruction (the deserializer validates before calling this).
    pub(crate) fn from_validated_parts(
        hamiltonian: ComplexMatrix,
        beta: f64,
        partition: f64,
        rho: DensityOperator,
    ) -> Self {
        Self {
            hamiltonian,
            beta,
            partition,
            rho,
        }
    }

    /// The (symmetrized) Hamiltonian the state was built from.
    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Partition function Z = Tr e^{−βH}.
    pub fn partition(&self) -> f64 {
        self.partition
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.rows()
    }
}

/// Purification of a Gibbs state: a unit vector in the doubled space whose
/// tilde-factor partial trace reproduces ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalVacuum {
    state: DoubledVector,
    beta: f64,
}

impl ThermalVacuum {
    pub fn state(&self) -> &DoubledVector {
        &self.state
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }
}

/// Hermitian observable acting on the physical factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, TfdError> {
        if !matrix.is_square() {
            return Err(LinalgError::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            }
            .into());
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > OBSERVABLE_TOL {
            return Err(TfdError::NonHermitianObservable { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Build the Gibbs state ρ = e^{−βH}/Z.
///
/// β = 0 is allowed (Z = d at finite dimension); negative or non-finite β is
/// rejected. The exponential is evaluated after shifting H by its smallest
/// eigenvalue so large β cannot overflow, and Z is rescaled accordingly.
pub fn gibbs(h: &ComplexMatrix, beta: f64) -> Result<ThermalState, TfdError> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(TfdError::NegativeBeta { beta });
    }
    if !h.is_square() {
        return Err(LinalgError::NonSquare {
            rows: h.rows(),
            cols: h.cols(),
        }
        .into());
    }
    let eig = linalg::hermitian_eig(h)?;
    let hamiltonian = eig.reconstruct(); // the symmetrized H actually used
    let ground = eig
        .eigenvalues()
        .first()
        .copied()
        .expect("dimensions are positive");
    let shifted_sum: f64 = eig
        .eigenvalues()
        .iter()
        .map(|&e| (-beta * (e - ground)).exp())
        .sum();
    let partition = (-beta * ground).exp() * shifted_sum;
    let rho_matrix = eig.map_eigenvalues(|e| (-beta * (e - ground)).exp() / shifted_sum);
    let rho = DensityOperator::new(rho_matrix)?;
    Ok(ThermalState {
        hamiltonian,
        beta,
        partition,
        rho,
    })
}

/// Thermal vacuum |0(β)⟩ = vectorize(√ρ): the purification of the Gibbs
/// state. Equals Σ_n √p_n e_n ⊗ ẽ_n for any spectral decomposition of ρ.
pub fn thermal_vacuum(state: &ThermalState) -> ThermalVacuum {
    let sqrt_rho = linalg::sqrt_psd(state.rho().matrix())
        .expect("a density operator is positive semidefinite");
    let vec = liouville::vectorize(&HSOperator::new(sqrt_rho).expect("square by construction"));
    debug_assert!((vec.norm() - 1.0).abs() <= 1e-12);
    ThermalVacuum {
        state: vec,
        beta: state.beta(),
    }
}

/// Thermal average by the operator route: Tr(ρA).
pub fn thermal_average_operator(a: &Observable, state: &ThermalState) -> Result<f64, TfdError> {
    if a.dim() != state.dim() {
        return Err(TfdError::DimensionMismatch {
            left: a.dim(),
            right: state.dim(),
        });
    }
    let value = state
        .rho()
        .matrix()
        .mul(a.matrix())
        .trace()
        .expect("square product");
    Ok(real_part_checked(value))
}

/// Thermal average by the doubled-space route: ⟨0(β)| A ⊗ I |0(β)⟩.
pub fn thermal_average_tfd(a: &Observable, vacuum: &ThermalVacuum) -> Result<f64, TfdError> {
    if a.dim() != vacuum.dim() {
        return Err(TfdError::DimensionMismatch {
            left: a.dim(),
            right: vacuum.dim(),
        });
    }
    Ok(real_part_checked(doubled_expectation(
        a.matrix(),
        vacuum.state(),
    )))
}

/// Raw doubled-space contraction ⟨v| A ⊗ I |v⟩, without Hermiticity or
/// normalization checks. The verification suites use this to drive fault
/// injections; prefer [`thermal_average_tfd`] elsewhere.
pub fn doubled_expectation(a: &ComplexMatrix, v: &DoubledVector) -> C64 {
    let d = v.dim();
    assert_eq!(a.rows(), d, "observable dimension must match the doubled factor");
    let comps = v.components();
    let mut total = C64::new(0.0, 0.0);
    for i in 0..d {
        for i2 in 0..d {
            let a_ii2 = a.get(i, i2);
            if a_ii2.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..d {
                total += comps[i * d + j].conj() * a_ii2 * comps[i2 * d + j];
            }
        }
    }
    total
}

fn real_part_checked(value: C64) -> f64 {
    assert!(
        value.im.abs() <= IMAGINARY_TOL,
        "thermal average has imaginary part {:.3e}; Hermitian observables have real means",
        value.im
    );
    value.re
}

/// Tilde conjugation ã = C·A·C: the entrywise conjugate in the standard
/// basis. An antilinear involution with tilde(AB) = tilde(A)·tilde(B).
pub fn tilde(a: &ComplexMatrix) -> Result<ComplexMatrix, TfdError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    Ok(a.conj())
}

/// Observable promoted to the doubled space: A ⊗ I_d. Under devectorization
/// it acts as X ↦ A·X.
pub fn doubled_observable(a: &Observable, dim: usize) -> Result<SuperOperator, TfdError> {
    if a.dim() != dim {
        return Err(TfdError::DimensionMismatch {
            left: a.dim(),
            right: dim,
        });
    }
    Ok(liouville::left_mult_super(
        &HSOperator::new(a.matrix().clone()).expect("observable matrices are square"),
    ))
}

/// Image of a test-space operator in the doubled space, with its pullback
/// classification.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaImage {
    vector: DoubledVector,
    class: DecayClass,
    profile: DecayProfile,
}

impl LambdaImage {
    pub fn vector(&self) -> &DoubledVector {
        &self.vector
    }

    /// Classification transported from the operator side.
    pub fn class(&self) -> DecayClass {
        self.class
    }

    pub fn profile(&self) -> &DecayProfile {
        &self.profile
    }
}

/// Correspondence from test-space operators to doubled vectors: vectorize,
/// carrying the classification along by pullback.
///
/// The profile must certify the operator's coefficient sequence in the
/// doubled (row-major) enumeration and classify as `TestSpace`.
pub fn lambda_map(op: &HSOperator, profile: &DecayProfile) -> Result<LambdaImage, TfdError> {
    let class = classify(profile);
    if class != DecayClass::TestSpace {
        return Err(TfdError::NotTestSpace { class });
    }
    for (index, z) in op.matrix().entries().iter().enumerate() {
        let value = z.norm();
        let bound = profile.bound(index);
        if value > bound + 1e-12 {
            return Err(TfdError::UncertifiedCoefficients { index, value, bound });
        }
    }
    Ok(LambdaImage {
        vector: liouville::vectorize(op),
        class,
        profile: *profile,
    })
}

/// Inverse correspondence: devectorize with the classification pulled back.
/// Exact round trip with [`lambda_map`].
pub fn lambda_inverse(image: &LambdaImage) -> (HSOperator, DecayClass) {
    (liouville::devectorize(image.vector()), image.class())
}
