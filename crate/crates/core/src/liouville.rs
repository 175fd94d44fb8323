//! The Liouville space of Hilbert–Schmidt operators at finite dimension:
//! trace inner product, density operators, the vectorization unitary between
//! operators on H and vectors in H ⊗ H̃, superoperator representations, and
//! the tilde-factor partial trace.
//!
//! Vectorization convention: |e_i⟩⟨e_j| ↦ e_i ⊗ ẽ_j, i.e. the row-major
//! flatten with the ket index on the physical factor and the bra index on the
//! tilde factor. This slot order makes the map unitary,
//! ⟨vec A, vec B⟩ = Tr(A†B); the conjugate slot order (kept as
//! [`vectorize_conj`] for negative controls) is antiunitary and conjugates
//! the inner product instead.
//!
//! Trace-class versus Hilbert–Schmidt distinctions vanish at finite
//! dimension; quantum channels and unbounded operators are out of scope.

use thiserror::Error;

use crate::linalg::{self, C64, ComplexMatrix, LinalgError};

/// Densities accept Hermiticity/trace deviations and negative eigenvalues up
/// to this tolerance; matrix-exponential chains introduce noise well below it.
pub const DENSITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiouvilleError {
    #[error("DimensionMismatch: operands have dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("BadLength: component count {actual} is not the square of a dimension{}", expected.map(|d| format!(" (expected {d})")).unwrap_or_default())]
    BadLength { actual: usize, expected: Option<usize> },

    #[error("NotHermitian: max |A - A\u{2020}| entry {deviation:.3e} exceeds tolerance {DENSITY_TOL:.0e}")]
    NotHermitian { deviation: f64 },

    #[error("NotPositive: eigenvalue {value:.3e} below -{DENSITY_TOL:.0e}")]
    NotPositive { value: f64 },

    #[error("TraceNotOne: trace {trace:.12} deviates from 1 beyond {DENSITY_TOL:.0e}")]
    TraceNotOne { trace: f64 },

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An element of the Liouville space: a square matrix viewed as a
/// Hilbert–Schmidt operator. Finite entries make the HS norm finite
/// automatically at finite dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HSOperator {
    matrix: ComplexMatrix,
}

impl HSOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, LiouvilleError> {
        if !matrix.is_square() {
            return Err(LinalgError::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            }
            .into());
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Statistical state: Hermitian, positive semidefinite, unit trace.
///
/// The constructor rejects matrices violating any of the three invariants
/// beyond [`DENSITY_TOL`], then clamps roundoff-negative eigenvalues to zero
/// and renormalizes the trace to exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, LiouvilleError> {
        if !matrix.is_square() {
            return Err(LinalgError::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            }
            .into());
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > DENSITY_TOL {
            return Err(LiouvilleError::NotHermitian { deviation });
        }
        let eig = linalg::hermitian_eig(&matrix)?;
        if let Some(&lambda) = eig.eigenvalues().iter().find(|&&l| l < -DENSITY_TOL) {
            return Err(LiouvilleError::NotPositive { value: lambda });
        }
        let trace: f64 = eig.eigenvalues().iter().sum();
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(LiouvilleError::TraceNotOne { trace });
        }
        let clamped_sum: f64 = eig.eigenvalues().iter().map(|l| l.max(0.0)).sum();
        let matrix = eig.map_eigenvalues(|l| l.max(0.0) / clamped_sum);
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_hs(&self) -> HSOperator {
        HSOperator { matrix: self.matrix.clone() }
    }
}

/// Vector in the doubled space H ⊗ H̃: component i·d + j multiplies
/// e_i ⊗ ẽ_j.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubledVector {
    dim: usize,
    components: Vec<C64>,
}

impl DoubledVector {
    /// Build from components of length `dim²`.
    pub fn new(dim: usize, components: Vec<C64>) -> Result<Self, LiouvilleError> {
        if dim == 0 || components.len() != dim * dim {
            return Err(LiouvilleError::BadLength {
                actual: components.len(),
                expected: Some(dim * dim),
            });
        }
        Ok(Self { dim, components })
    }

    /// Build from components alone; the length must be a perfect square.
    pub fn from_components(components: Vec<C64>) -> Result<Self, LiouvilleError> {
        let dim = (components.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != components.len() {
            return Err(LiouvilleError::BadLength {
                actual: components.len(),
                expected: None,
            });
        }
        Ok(Self { dim, components })
    }

    /// Product vector φ ⊗ ψ̃ of two factor-space vectors.
    pub fn from_product(phys: &[C64], tilde: &[C64]) -> Result<Self, LiouvilleError> {
        if phys.len() != tilde.len() {
            return Err(LiouvilleError::DimensionMismatch {
                left: phys.len(),
                right: tilde.len(),
            });
        }
        Self::new(phys.len(), linalg::kron_vec(phys, tilde))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    /// Inner product, antilinear in `self`.
    pub fn dot(&self, other: &DoubledVector) -> Result<C64, LiouvilleError> {
        if self.dim != other.dim {
            return Err(LiouvilleError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &DoubledVector) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in vector comparison");
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Linear map on vectorized operators: a d²×d² matrix acting on H ⊗ H̃.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    dim: usize,
    matrix: ComplexMatrix,
}

impl SuperOperator {
    pub fn new(dim: usize, matrix: ComplexMatrix) -> Result<Self, LiouvilleError> {
        if matrix.rows() != dim * dim || matrix.cols() != dim * dim {
            return Err(LiouvilleError::BadLength {
                actual: matrix.rows() * matrix.cols(),
                expected: Some(dim * dim * dim * dim),
            });
        }
        Ok(Self { dim, matrix })
    }

    /// Factor dimension d (the matrix itself is d²×d²).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Act on an operator through its vectorization.
    pub fn apply(&self, x: &HSOperator) -> Result<HSOperator, LiouvilleError> {
        if x.dim() != self.dim {
            return Err(LiouvilleError::DimensionMismatch {
                left: self.dim,
                right: x.dim(),
            });
        }
        let image = self.matrix.mul_vec(vectorize(x).components());
        Ok(devectorize(&DoubledVector {
            dim: self.dim,
            components: image,
        }))
    }

    pub fn apply_vec(&self, v: &DoubledVector) -> Result<DoubledVector, LiouvilleError> {
        if v.dim() != self.dim {
            return Err(LiouvilleError::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        Ok(DoubledVector {
            dim: self.dim,
            components: self.matrix.mul_vec(v.components()),
        })
    }
}

/// Hilbert–Schmidt inner product Tr(A†B), conjugate-symmetric and positive
/// on the diagonal.
pub fn hs_inner(a: &HSOperator, b: &HSOperator) -> Result<C64, LiouvilleError> {
    if a.dim() != b.dim() {
        return Err(LiouvilleError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    // Tr(A†B) = Σ_ij conj(a_ij)·b_ij without forming the product.
    Ok(a.matrix()
        .entries()
        .iter()
        .zip(b.matrix().entries())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Unitary vectorization |e_i⟩⟨e_j| ↦ e_i ⊗ ẽ_j: the row-major flatten.
/// Preserves the inner product: ⟨vec A, vec B⟩ = Tr(A†B).
pub fn vectorize(a: &HSOperator) -> DoubledVector {
    DoubledVector {
        dim: a.dim(),
        components: a.matrix().entries().to_vec(),
    }
}

/// Conjugate slot convention |e_i⟩⟨e_j| ↦ e_j ⊗ C e_i, the literal reading of
/// the rank-one correspondence. Antiunitary: it conjugates the inner product,
/// ⟨vec' A, vec' B⟩ = conj(Tr(A†B)). Retained as a negative control for the
/// verification suites; everything else uses [`vectorize`].
pub fn vectorize_conj(a: &HSOperator) -> DoubledVector {
    let d = a.dim();
    DoubledVector {
        dim: d,
        components: ComplexMatrix::from_fn(d, d, |i, j| a.matrix().get(j, i).conj())
            .entries()
            .to_vec(),
    }
}

/// Exact two-sided inverse of [`vectorize`].
pub fn devectorize(v: &DoubledVector) -> HSOperator {
    HSOperator {
        matrix: ComplexMatrix::from_parts(v.dim, v.dim, v.components.clone()),
    }
}

/// Rank-one operator x ↦ ⟨φ, x⟩ψ (antilinear in φ): the matrix ψ·φ†.
pub fn rank_one(phi: &[C64], psi: &[C64]) -> Result<HSOperator, LiouvilleError> {
    if phi.len() != psi.len() {
        return Err(LiouvilleError::DimensionMismatch {
            left: phi.len(),
            right: psi.len(),
        });
    }
    let d = phi.len();
    Ok(HSOperator {
        matrix: ComplexMatrix::from_fn(d, d, |i, j| psi[i] * phi[j].conj()),
    })
}

/// Left multiplication transported to the doubled space: A ⊗ I, satisfying
/// devectorize((A⊗I)·vec X) = A·X.
pub fn left_mult_super(a: &HSOperator) -> SuperOperator {
    let d = a.dim();
    SuperOperator {
        dim: d,
        matrix: a.matrix().kron(&ComplexMatrix::identity(d)),
    }
}

/// Right multiplication transported to the doubled space: I ⊗ Aᵀ, satisfying
/// devectorize((I⊗Aᵀ)·vec X) = X·A. Equals the transported I ⊗ Ã for
/// Ã = C A† C.
pub fn right_mult_super(a: &HSOperator) -> SuperOperator {
    let d = a.dim();
    SuperOperator {
        dim: d,
        matrix: ComplexMatrix::identity(d).kron(&a.matrix().transpose()),
    }
}

/// Commutator superoperator H ⊗ I − I ⊗ Hᵀ for Hermitian H:
/// devectorize(L·vec X) = H·X − X·H.
pub fn commutator_super(h: &HSOperator) -> Result<SuperOperator, LiouvilleError> {
    let deviation = h.matrix().hermiticity_deviation();
    if deviation > DENSITY_TOL {
        return Err(LiouvilleError::NotHermitian { deviation });
    }
    let left = left_mult_super(h);
    let right = right_mult_super(h);
    Ok(SuperOperator {
        dim: h.dim(),
        matrix: left.matrix.sub(&right.matrix),
    })
}

/// Reduced operator of |v⟩⟨v| over the tilde factor; equals
/// (devectorize v)·(devectorize v)†.
pub fn partial_trace_tilde(v: &DoubledVector) -> HSOperator {
    let d = v.dim;
    let matrix = ComplexMatrix::from_fn(d, d, |i, k| {
        (0..d)
            .map(|j| v.components[i * d + j] * v.components[k * d + j].conj())
            .sum()
    });
    HSOperator { matrix }
}
