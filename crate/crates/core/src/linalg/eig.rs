//! Hermitian eigendecomposition by cyclic Jacobi rotations, plus the matrix
//! functions built on it.
//!
//! Matrices here stay small (dimension ≤ ~64), so the Jacobi method is chosen
//! for its accuracy and simplicity rather than speed. A sweep visits every
//! off-diagonal pair once; convergence is declared when the off-diagonal
//! Frobenius norm drops below `1e-14` times the matrix norm.

use super::matrix::{C64, ComplexMatrix};
use super::LinalgError;

/// Inputs are accepted as Hermitian when `max |A - A†|` is below this.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues below `-PSD_TOL` make a matrix fail the PSD check; anything in
/// `[-PSD_TOL, 0)` is clamped to zero.
pub const PSD_TOL: f64 = 1e-12;

const CONVERGENCE_FACTOR: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and orthonormal eigenvector columns.
///
/// The decomposition is deterministic: each eigenvector's phase is fixed by
/// making its largest-magnitude component (the first such on ties) real and
/// positive.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Matrix whose columns are the eigenvectors, ordered like the
    /// eigenvalues.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `j` as a vector.
    pub fn eigenvector(&self, j: usize) -> Vec<C64> {
        (0..self.dim()).map(|i| self.eigenvectors.get(i, j)).collect()
    }

    /// Reassemble V·diag(f(λ))·V†.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = f(self.eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k);
                for j in 0..n {
                    let term = vik * v.get(j, k).conj() * w;
                    out.set(i, j, out.get(i, j) + term);
                }
            }
        }
        out
    }

    /// Reassemble the decomposed matrix V·diag(λ)·V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input may deviate from exact Hermiticity by up to [`HERMITICITY_TOL`]
/// (arithmetic chains accumulate noise); it is symmetrized to (A + A†)/2
/// before decomposition. Larger deviations are rejected.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let n = a.rows();
    let mut m = a.add(&a.adjoint()).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = CONVERGENCE_FACTOR * m.frobenius_norm();

    let mut converged = off_diagonal_norm(&m) <= threshold;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate_pair(&mut m, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&m) <= threshold;
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort ascending; the sort is stable so ties keep the sweep order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(i, i)
            .re
            .partial_cmp(&m.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m.get(k, k).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let phase = column_phase(&v, k);
        for row in 0..n {
            vectors.set(row, col, v.get(row, k) * phase);
        }
    }

    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// V·diag(exp(s·λ))·V† for Hermitian input. Output is Hermitian positive
/// definite.
pub fn exp_hermitian(a: &ComplexMatrix, s: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(a)?;
    Ok(eig.map_eigenvalues(|lambda| (s * lambda).exp()))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; anything below fails
/// with `NegativeEigenvalue`.
pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(a)?;
    if let Some(&lambda) = eig
        .eigenvalues()
        .iter()
        .find(|&&lambda| lambda < -PSD_TOL)
    {
        return Err(LinalgError::NegativeEigenvalue { value: lambda });
    }
    Ok(eig.map_eigenvalues(|lambda| lambda.max(0.0).sqrt()))
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry: the off-diagonal
/// phase is absorbed into the rotation, reducing the 2×2 block to the real
/// symmetric case.
fn rotate_pair(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m.get(p, q);
    if apq.norm_sqr() == 0.0 {
        return;
    }
    let abs = apq.norm();
    let phase = apq / abs; // e^{iφ}
    let alpha = m.get(p, p).re;
    let gamma = m.get(q, q).re;
    let tau = (gamma - alpha) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.rows();
    // Right multiplication by J: columns p and q.
    for k in 0..n {
        let akp = m.get(k, p);
        let akq = m.get(k, q);
        m.set(k, p, akp * c - akq * phase.conj() * s);
        m.set(k, q, akp * s + akq * phase.conj() * c);
    }
    // Left multiplication by J†: rows p and q.
    for k in 0..n {
        let apk = m.get(p, k);
        let aqk = m.get(q, k);
        m.set(p, k, apk * c - aqk * phase * s);
        m.set(q, k, apk * s + aqk * phase * c);
    }
    // The rotation zeroes (p, q) and keeps the diagonal real; enforce both
    // exactly against roundoff drift.
    m.set(p, q, C64::new(0.0, 0.0));
    m.set(q, p, C64::new(0.0, 0.0));
    m.set(p, p, C64::new(m.get(p, p).re, 0.0));
    m.set(q, q, C64::new(m.get(q, q).re, 0.0));

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c - vkq * phase.conj() * s);
        v.set(k, q, vkp * s + vkq * phase.conj() * c);
    }
}

/// Phase factor that makes the column's largest-magnitude component (first on
/// ties) real and positive.
fn column_phase(v: &ComplexMatrix, col: usize) -> C64 {
    let n = v.rows();
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for i in 0..n {
        let norm = v.get(i, col).norm_sqr();
        if norm > best_norm {
            best_norm = norm;
            best = i;
        }
    }
    let z = v.get(best, col);
    let abs = z.norm();
    if abs == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        z.conj() / abs
    }
}
