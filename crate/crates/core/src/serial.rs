//! JSON wire formats.
//!
//! Complex numbers always serialize as two-element arrays `[re, im]` — no
//! string forms, so parsing is bit-stable. Square operators and
//! superoperators serialize as `{"dim": d, "entries": [[re,im], ...]}` in
//! row-major order (a superoperator's `dim` is its factor dimension d; the
//! entry list has length d⁴). Doubled vectors use `{"dim": d, "components":
//! [[re,im], ...]}`. Deserialization re-validates every type invariant, so
//! anything parsed is as trustworthy as anything constructed.

use serde::de::Error as DeError;
use serde::ser::Error as SerError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{C64, ComplexMatrix};
use crate::liouville::{DensityOperator, DoubledVector, HSOperator, SuperOperator};
use crate::rigged::{DecayProfile, ProfileKind, SequenceVector};
use crate::tfd::ThermalState;

fn to_pairs(entries: &[C64]) -> Vec<[f64; 2]> {
    entries.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(pairs: Vec<[f64; 2]>) -> Vec<C64> {
    pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect()
}

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl WireMatrix {
    fn from_square(m: &ComplexMatrix) -> Result<Self, String> {
        if !m.is_square() {
            return Err(format!(
                "only square matrices serialize to the dim/entries form, got {}x{}",
                m.rows(),
                m.cols()
            ));
        }
        Ok(Self {
            dim: m.rows(),
            entries: to_pairs(m.entries()),
        })
    }

    fn into_matrix(self) -> Result<ComplexMatrix, String> {
        ComplexMatrix::new(self.dim, self.dim, from_pairs(self.entries))
            .map_err(|e| e.to_string())
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireMatrix::from_square(self)
            .map_err(S::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        WireMatrix::deserialize(deserializer)?
            .into_matrix()
            .map_err(D::Error::custom)
    }
}

impl Serialize for HSOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HSOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        HSOperator::new(ComplexMatrix::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        DensityOperator::new(ComplexMatrix::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl Serialize for SuperOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireMatrix {
            dim: self.dim(),
            entries: to_pairs(self.matrix().entries()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SuperOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireMatrix::deserialize(deserializer)?;
        let d2 = wire.dim * wire.dim;
        let matrix =
            ComplexMatrix::new(d2, d2, from_pairs(wire.entries)).map_err(D::Error::custom)?;
        SuperOperator::new(wire.dim, matrix).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WireVector {
    dim: usize,
    components: Vec<[f64; 2]>,
}

impl Serialize for DoubledVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireVector {
            dim: self.dim(),
            components: to_pairs(self.components()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DoubledVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireVector::deserialize(deserializer)?;
        DoubledVector::new(wire.dim, from_pairs(wire.components)).map_err(D::Error::custom)
    }
}

#[derive(Deserialize)]
struct WireProfile {
    kind: ProfileKind,
    rate: f64,
    constant: f64,
}

impl<'de> Deserialize<'de> for DecayProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireProfile::deserialize(deserializer)?;
        match wire.kind {
            ProfileKind::Geometric => DecayProfile::geometric(wire.rate, wire.constant),
            ProfileKind::Power => DecayProfile::power(wire.rate, wire.constant),
        }
        .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WireSequence {
    profile: DecayProfile,
    coefficients: Vec<[f64; 2]>,
}

impl Serialize for SequenceVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireSequence {
            profile: *self.profile(),
            coefficients: to_pairs(self.coefficients()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SequenceVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireSequence::deserialize(deserializer)?;
        SequenceVector::new(from_pairs(wire.coefficients), wire.profile)
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WireThermalState {
    hamiltonian: ComplexMatrix,
    beta: f64,
    partition: f64,
    rho: DensityOperator,
}

impl Serialize for ThermalState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireThermalState {
            hamiltonian: self.hamiltonian().clone(),
            beta: self.beta(),
            partition: self.partition(),
            rho: self.rho().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ThermalState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireThermalState::deserialize(deserializer)?;
        // Cross-check the recorded pieces against a reconstruction from the
        // Hamiltonian, then keep the wire values: a parsed state obeys the
        // same invariants as a constructed one without losing precision.
        let rebuilt = crate::tfd::gibbs(&wire.hamiltonian, wire.beta).map_err(D::Error::custom)?;
        let z = rebuilt.partition();
        if (wire.partition - z).abs() > 1e-10 * z.max(1.0) {
            return Err(D::Error::custom(format!(
                "partition {} is inconsistent with Tr exp(-beta H) = {z}",
                wire.partition
            )));
        }
        let deviation = wire.rho.matrix().max_abs_diff(rebuilt.rho().matrix());
        if deviation > 1e-10 {
            return Err(D::Error::custom(format!(
                "rho deviates from exp(-beta H)/Z by {deviation:.3e}"
            )));
        }
        Ok(ThermalState::from_validated_parts(
            wire.hamiltonian,
            wire.beta,
            wire.partition,
            wire.rho,
        ))
    }
}
