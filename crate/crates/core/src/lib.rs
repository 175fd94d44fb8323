//! Finite-dimensional toolkit for quantum statistical mechanics in two
//! equivalent pictures: the Liouville space of Hilbert–Schmidt operators and
//! the doubled Hilbert space of thermo field dynamics (TFD).
//!
//! The crate is organized in layers:
//!
//! - [`linalg`] — dense complex matrices, Kronecker products, a cyclic Jacobi
//!   eigensolver for Hermitian matrices, matrix functions, and the antilinear
//!   conjugation `C`.
//! - [`rigged`] — a desk-scale model of the Gelfand triplet Φ ⊂ H ⊂ Φ× using
//!   truncated weighted sequence spaces: seminorms, membership classification,
//!   dual pairings with certified tail bounds, tensor profiles, and transport
//!   of structure along unitaries.
//! - [`liouville`] — the Hilbert–Schmidt trace inner product, density
//!   operators, the vectorization unitary between operators and doubled-space
//!   vectors, superoperators, and the tilde-factor partial trace.
//! - [`tfd`] — Gibbs states, thermal vacua, thermal averages by both the
//!   operator and doubled-space routes, tilde conjugation, and the Λ
//!   correspondence between test-space operators and doubled vectors.
//! - [`verify`] — a seeded, reproducible property-verification suite with a
//!   machine-readable report, exposed by the companion CLI.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to call from multiple threads.

#![forbid(unsafe_code)]

pub mod linalg;
pub mod liouville;
pub mod rigged;
pub mod rng;
pub mod serial;
pub mod tfd;
pub mod verify;

pub use linalg::{ComplexMatrix, HermitianEigen, LinalgError, C64};
pub use liouville::{DensityOperator, DoubledVector, HSOperator, LiouvilleError, SuperOperator};
pub use rigged::{DecayClass, DecayProfile, PairingResult, RiggedError, Seminorm, SequenceVector};
pub use tfd::{Observable, TfdError, ThermalState, ThermalVacuum};
pub use verify::{CaseReport, VerificationReport, VerifyConfig};
