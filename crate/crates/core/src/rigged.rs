//! Desk-scale model of the Gelfand triplet Φ ⊂ H ⊂ Φ× built from truncated
//! weighted sequence spaces.
//!
//! A [`DecayProfile`] is a certified envelope |φ_n| ≤ c·r^n (geometric) or
//! |φ_n| ≤ c·(1+n)^a (power law); the profile alone decides membership:
//! rapidly decreasing sequences (geometric, r < 1) model the nuclear test
//! space, square-summable power decay (a < −1/2) models the Hilbert tier,
//! polynomially bounded growth models the dual, and super-polynomial growth
//! falls outside it. This is the standard s ⊂ ℓ² ⊂ s′ realization; the
//! seminorm family is p_k(φ) = sup_n (1+n)^k |φ_n|.
//!
//! Seminorms, pairing tail bounds, and tensor profiles are all computed
//! analytically from the profiles, never from truncated data alone, so every
//! reported bound is rigorous for the idealized infinite sequence the profile
//! certifies.
//!
//! Conventions:
//! - A geometric profile with rate 0 is the zero envelope (it certifies only
//!   the zero sequence). Finitely supported functionals are certified instead
//!   by steep geometric rates, whose tail bounds underflow to an exact 0.
//! - Geometric rate 1 is classified as power growth with exponent 0.
//! - Tensor profiles are indexed by the Cantor diagonal number of the pair
//!   enumeration: the profile bounds sup_{m+n=d} |φ_m ψ_n|, which keeps the
//!   single-index profile form closed under tensor products.
//!
//! True topological completions, continuity proofs for the inclusion maps,
//! and local-base manipulations are not modeled.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{C64, ComplexMatrix};

/// Largest seminorm order the analytic formulas are certified for.
pub const MAX_SEMINORM_ORDER: u32 = 16;

/// Default truncation length for sequence fixtures.
pub const DEFAULT_TRUNCATION: usize = 256;

/// Pairings are reported converged when the certified tail is below this.
pub const PAIRING_CONVERGENCE_TOL: f64 = 1e-9;

const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiggedError {
    #[error("InvalidProfile: {reason}")]
    InvalidProfile { reason: String },

    #[error("ProfileViolation: |coefficient[{index}]| = {value:.6e} exceeds certified bound {bound:.6e}")]
    ProfileViolation { index: usize, value: f64, bound: f64 },

    #[error("UndefinedPairing: {reason}")]
    UndefinedPairing { reason: String },

    #[error("NotUnitary: max |U\u{2020}U - I| entry {deviation:.3e} exceeds tolerance 1e-10")]
    NotUnitary { deviation: f64 },
}

/// Profile family: geometric envelopes c·r^n or power-law envelopes
/// c·(1+n)^a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Geometric,
    Power,
}

/// Certified asymptotic envelope for a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayProfile {
    kind: ProfileKind,
    rate: f64,
    constant: f64,
}

impl DecayProfile {
    /// Geometric envelope |φ_n| ≤ constant·rate^n. Rate 0 is the zero
    /// envelope.
    pub fn geometric(rate: f64, constant: f64) -> Result<Self, RiggedError> {
        if !rate.is_finite() || rate < 0.0 {
            return Err(RiggedError::InvalidProfile {
                reason: format!("geometric rate must be finite and nonnegative, got {rate}"),
            });
        }
        Self::with_constant(ProfileKind::Geometric, rate, constant)
    }

    /// Power-law envelope |φ_n| ≤ constant·(1+n)^exponent.
    pub fn power(exponent: f64, constant: f64) -> Result<Self, RiggedError> {
        if !exponent.is_finite() {
            return Err(RiggedError::InvalidProfile {
                reason: format!("power exponent must be finite, got {exponent}"),
            });
        }
        Self::with_constant(ProfileKind::Power, exponent, constant)
    }

    fn with_constant(kind: ProfileKind, rate: f64, constant: f64) -> Result<Self, RiggedError> {
        if !constant.is_finite() || constant < 0.0 {
            return Err(RiggedError::InvalidProfile {
                reason: format!("profile constant must be finite and nonnegative, got {constant}"),
            });
        }
        Ok(Self { kind, rate, constant })
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Geometric ratio or power exponent, depending on the kind.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Envelope value at index `n`.
    pub fn bound(&self, n: usize) -> f64 {
        match self.kind {
            ProfileKind::Geometric => {
                if self.rate == 0.0 {
                    0.0
                } else {
                    self.constant * self.rate.powi(n as i32)
                }
            }
            ProfileKind::Power => self.constant * ((n + 1) as f64).powf(self.rate),
        }
    }

    /// Whether the envelope is identically zero.
    pub fn is_zero(&self) -> bool {
        self.constant == 0.0 || (self.kind == ProfileKind::Geometric && self.rate == 0.0)
    }
}

/// Membership tier of the triplet Φ ⊂ H ⊂ Φ×, decided by the profile alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayClass {
    /// Rapidly decreasing: in the nuclear test space (hence in every tier).
    TestSpace,
    /// Square-summable but not rapidly decreasing.
    HilbertOnly,
    /// Polynomially bounded but not square-summable.
    DualOnly,
    /// Faster than polynomial growth: no continuous pairing exists.
    OutsideDual,
}

/// Classify a profile into its triplet tier.
///
/// Geometric r < 1 certifies the test space; power a < −1/2 is
/// square-summable; any other power (and geometric r = 1, read as power 0) is
/// polynomially bounded; geometric r > 1 outgrows every polynomial. The
/// boundary a = −1/2 sits in the dual tier since Σ 1/(n+1) diverges.
pub fn classify(profile: &DecayProfile) -> DecayClass {
    if profile.is_zero() {
        return DecayClass::TestSpace;
    }
    match profile.kind {
        ProfileKind::Geometric => {
            if profile.rate < 1.0 {
                DecayClass::TestSpace
            } else if profile.rate == 1.0 {
                classify_power(0.0)
            } else {
                DecayClass::OutsideDual
            }
        }
        ProfileKind::Power => classify_power(profile.rate),
    }
}

fn classify_power(exponent: f64) -> DecayClass {
    if exponent < -0.5 {
        DecayClass::HilbertOnly
    } else {
        DecayClass::DualOnly
    }
}

/// Truncated coefficient sequence together with the profile certifying it.
///
/// Construction checks the envelope on every stored entry (within 1e−12);
/// the profile then speaks for the unstored tail.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceVector {
    coefficients: Vec<C64>,
    profile: DecayProfile,
}

impl SequenceVector {
    pub fn new(coefficients: Vec<C64>, profile: DecayProfile) -> Result<Self, RiggedError> {
        for (index, z) in coefficients.iter().enumerate() {
            let value = z.norm();
            let bound = profile.bound(index);
            if !value.is_finite() || value > bound + BOUND_SLACK {
                return Err(RiggedError::ProfileViolation { index, value, bound });
            }
        }
        Ok(Self { coefficients, profile })
    }

    /// Build a truncation of length `len` from an index formula.
    pub fn from_fn(
        len: usize,
        profile: DecayProfile,
        f: impl Fn(usize) -> C64,
    ) -> Result<Self, RiggedError> {
        Self::new((0..len).map(f).collect(), profile)
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn profile(&self) -> &DecayProfile {
        &self.profile
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn class(&self) -> DecayClass {
        classify(&self.profile)
    }
}

/// Value of a seminorm p_k: finite, or divergent under the profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Seminorm {
    Finite(f64),
    Divergent,
}

impl Seminorm {
    pub fn is_finite(&self) -> bool {
        matches!(self, Seminorm::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Seminorm::Finite(v) => Some(*v),
            Seminorm::Divergent => None,
        }
    }
}

/// Seminorm p_k(φ) = sup_n (1+n)^k |φ_n|, evaluated analytically on the
/// certifying envelope (so it is exact whenever the coefficients saturate
/// their bound).
///
/// Orders above [`MAX_SEMINORM_ORDER`] are outside the certified range and
/// are rejected by assertion.
pub fn seminorm(v: &SequenceVector, k: u32) -> Seminorm {
    profile_seminorm(v.profile(), k)
}

/// Seminorm of the envelope itself; see [`seminorm`].
pub fn profile_seminorm(profile: &DecayProfile, k: u32) -> Seminorm {
    assert!(
        k <= MAX_SEMINORM_ORDER,
        "seminorm order {k} exceeds the certified cap {MAX_SEMINORM_ORDER}"
    );
    if profile.is_zero() {
        return Seminorm::Finite(0.0);
    }
    let c = profile.constant;
    match profile.kind {
        ProfileKind::Geometric => {
            if profile.rate < 1.0 {
                Seminorm::Finite(c * poly_geometric_sup(k as f64, profile.rate, 0))
            } else if profile.rate == 1.0 && k == 0 {
                Seminorm::Finite(c)
            } else {
                Seminorm::Divergent
            }
        }
        ProfileKind::Power => {
            if k as f64 + profile.rate > 0.0 {
                Seminorm::Divergent
            } else {
                // sup (1+n)^{k+a} over n ≥ 0 is attained at n = 0.
                Seminorm::Finite(c)
            }
        }
    }
}

/// sup over integer n ≥ n0 of (1+n)^p · s^n, for 0 ≤ s < 1 (also finite for
/// p ≤ 0 at s = 1). The continuous maximizer is x* = p/(−ln s) − 1; the
/// integer sup sits at a neighbor of x* clamped to n0.
fn poly_geometric_sup(p: f64, s: f64, n0: usize) -> f64 {
    debug_assert!((0.0..=1.0).contains(&s));
    let g = |n: usize| ((1 + n) as f64).powf(p) * s.powi(n as i32);
    if s == 0.0 {
        // Only n = 0 contributes (s^0 = 1).
        return if n0 == 0 { 1.0 } else { 0.0 };
    }
    if p <= 0.0 || s == 1.0 {
        return g(n0);
    }
    let x_star = p / (-s.ln()) - 1.0;
    if x_star <= n0 as f64 {
        return g(n0);
    }
    let lo = (x_star.floor() as usize).max(n0);
    let hi = (x_star.ceil() as usize).max(n0);
    g(n0).max(g(lo)).max(g(hi))
}

/// Dual pairing ⟨F, φ⟩ truncated at the stored length, with a certified tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingResult {
    /// Truncated sum Σ conj(f_n)·v_n (antilinear in the functional slot).
    pub value: C64,
    /// Rigorous upper bound on the discarded tail, from the product envelope.
    pub tail_bound: f64,
    /// Whether the tail bound is below [`PAIRING_CONVERGENCE_TOL`].
    pub converged: bool,
}

/// Pair a dual element `f` against a test vector `v`.
///
/// Defined when `f` lies inside the dual (any tier but `OutsideDual`) and `v`
/// certifies test-space decay. The sum runs over the shorter truncation; the
/// tail bound covers everything beyond it.
pub fn pair(f: &SequenceVector, v: &SequenceVector) -> Result<PairingResult, RiggedError> {
    if classify(f.profile()) == DecayClass::OutsideDual {
        return Err(RiggedError::UndefinedPairing {
            reason: "functional profile lies outside the dual space".into(),
        });
    }
    if classify(v.profile()) != DecayClass::TestSpace {
        return Err(RiggedError::UndefinedPairing {
            reason: "pairing argument must certify test-space decay".into(),
        });
    }
    let n = f.len().min(v.len());
    let value: C64 = f.coefficients()[..n]
        .iter()
        .zip(&v.coefficients()[..n])
        .map(|(a, b)| a.conj() * b)
        .sum();
    let tail_bound = pairing_tail_bound(f.profile(), v.profile(), n);
    Ok(PairingResult {
        value,
        tail_bound,
        converged: tail_bound < PAIRING_CONVERGENCE_TOL,
    })
}

/// Upper bound on Σ_{n≥start} bound_f(n)·bound_v(n) where `v` is test-space
/// (geometric, rate < 1). Power-times-geometric tails are dominated by a
/// geometric series at the square-root rate.
fn pairing_tail_bound(fp: &DecayProfile, vp: &DecayProfile, start: usize) -> f64 {
    if fp.is_zero() || vp.is_zero() {
        return 0.0;
    }
    debug_assert!(vp.kind == ProfileKind::Geometric && vp.rate < 1.0);
    let c = fp.constant * vp.constant;
    let rv = vp.rate;
    match fp.kind {
        ProfileKind::Geometric => {
            let r = fp.rate * rv;
            c * r.powi(start as i32) / (1.0 - r)
        }
        ProfileKind::Power => {
            let a = fp.rate;
            if a <= 0.0 {
                c * ((start + 1) as f64).powf(a) * rv.powi(start as i32) / (1.0 - rv)
            } else {
                let s = rv.sqrt();
                let envelope = poly_geometric_sup(a, s, start);
                c * envelope * s.powi(start as i32) / (1.0 - s)
            }
        }
    }
}

/// Profile for the tensor of two certified sequences, indexed by the Cantor
/// diagonal number d: the returned envelope dominates sup_{m+n=d}
/// bound_p(m)·bound_q(n).
///
/// Test ⊗ Test stays geometric at the larger rate; a power factor caps the
/// result at its own tier; anything tensored with super-polynomial growth
/// stays outside the dual. A zero factor collapses the product to the zero
/// envelope, reported as geometric rate 0.
pub fn tensor_profile(p: &DecayProfile, q: &DecayProfile) -> DecayProfile {
    let c = p.constant * q.constant;
    let shape = |profile: &DecayProfile| -> Shape {
        if profile.is_zero() {
            Shape::Zero
        } else {
            match profile.kind {
                ProfileKind::Geometric if profile.rate == 1.0 => Shape::Power(0.0),
                ProfileKind::Geometric => Shape::Geometric(profile.rate),
                ProfileKind::Power => Shape::Power(profile.rate),
            }
        }
    };
    let profile = |shape: Shape, c: f64| match shape {
        Shape::Zero => DecayProfile::geometric(0.0, c),
        Shape::Geometric(r) => DecayProfile::geometric(r, c),
        Shape::Power(a) => DecayProfile::power(a, c),
    };
    let combined = match (shape(p), shape(q)) {
        (Shape::Zero, _) | (_, Shape::Zero) => (Shape::Zero, c),
        (Shape::Geometric(rp), Shape::Geometric(rq)) => (Shape::Geometric(rp.max(rq)), c),
        (Shape::Power(ap), Shape::Power(aq)) => {
            if ap >= 0.0 && aq >= 0.0 {
                (Shape::Power(ap + aq), c)
            } else if ap < 0.0 && aq < 0.0 {
                // One factor sits past the diagonal midpoint, the other is ≤ 1.
                let a = ap.max(aq);
                (Shape::Power(a), c * 2f64.powf(-a))
            } else {
                (Shape::Power(ap.max(aq)), c)
            }
        }
        (Shape::Geometric(r), Shape::Power(a)) | (Shape::Power(a), Shape::Geometric(r)) => {
            if r > 1.0 {
                // Fold the polynomial into the dominant geometric growth.
                (Shape::Geometric(r), c * poly_geometric_sup(a, 1.0 / r, 0))
            } else if a >= 0.0 {
                (Shape::Power(a), c)
            } else {
                // Split the diagonal at its midpoint: the power half is
                // dominated directly, the geometric half through the
                // square-root rate.
                let fold = poly_geometric_sup(-a, r.sqrt(), 0);
                (Shape::Power(a), c * 2f64.powf(-a).max(fold))
            }
        }
    };
    profile(combined.0, combined.1).expect("tensor profile parameters are valid")
}

#[derive(Clone, Copy)]
enum Shape {
    Zero,
    Geometric(f64),
    Power(f64),
}

/// Cantor diagonal enumeration of pairs: (m, n) on diagonal d = m + n.
pub fn cantor_index(m: usize, n: usize) -> usize {
    let d = m + n;
    d * (d + 1) / 2 + n
}

/// A sequence vector pushed through a unitary on its truncation.
///
/// Class and seminorms are defined by pullback: the transported element
/// carries the topology induced from its source, so both evaluate on the
/// source profile regardless of what the transported coefficients look like.
#[derive(Debug, Clone, PartialEq)]
pub struct Transported {
    coefficients: Vec<C64>,
    pullback: DecayProfile,
}

impl Transported {
    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    /// Profile inherited from the source element.
    pub fn pullback_profile(&self) -> &DecayProfile {
        &self.pullback
    }

    /// Classification by pullback.
    pub fn class(&self) -> DecayClass {
        classify(&self.pullback)
    }

    /// Seminorm by pullback: evaluates on the source profile.
    pub fn seminorm(&self, k: u32) -> Seminorm {
        profile_seminorm(&self.pullback, k)
    }

    /// Transport further along another unitary; the pullback survives, so
    /// composing transports matches transporting along the composed unitary.
    pub fn transport(&self, u: &ComplexMatrix) -> Result<Transported, RiggedError> {
        check_unitary(u, self.coefficients.len())?;
        Ok(Transported {
            coefficients: u.mul_vec(&self.coefficients),
            pullback: self.pullback,
        })
    }
}

/// Transport a sequence vector along a unitary on its truncation, inducing
/// class and seminorms from the source.
pub fn transport(u: &ComplexMatrix, v: &SequenceVector) -> Result<Transported, RiggedError> {
    check_unitary(u, v.len())?;
    Ok(Transported {
        coefficients: u.mul_vec(v.coefficients()),
        pullback: *v.profile(),
    })
}

fn check_unitary(u: &ComplexMatrix, len: usize) -> Result<(), RiggedError> {
    assert!(
        u.is_square() && u.rows() == len,
        "transport requires a square matrix matching the truncation length"
    );
    let deviation = u.unitarity_deviation();
    if deviation > 1e-10 {
        return Err(RiggedError::NotUnitary { deviation });
    }
    Ok(())
}
