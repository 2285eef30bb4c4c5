use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{KgError, Result};

const MIX_TOL: f64 = 1e-12;

/// Split of the step between vector (time-component) and scalar character.
///
/// `g_t + g_s = 1`, both non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingMix {
    pub g_t: f64,
    pub g_s: f64,
}

impl CouplingMix {
    pub const PURE_VECTOR: CouplingMix = CouplingMix { g_t: 1.0, g_s: 0.0 };
    pub const PURE_SCALAR: CouplingMix = CouplingMix { g_t: 0.0, g_s: 1.0 };

    /// Mix with the given vector share; the scalar share is `1 - g_t`.
    pub fn vector_fraction(g_t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&g_t) {
            return Err(KgError::invalid(format!("g_t must lie in [0, 1], got {g_t}")));
        }
        Ok(CouplingMix { g_t, g_s: 1.0 - g_t })
    }

    pub fn new(g_t: f64, g_s: f64) -> Result<Self> {
        if !(g_t >= 0.0 && g_s >= 0.0) {
            return Err(KgError::invalid(format!(
                "couplings must be non-negative, got g_t = {g_t}, g_s = {g_s}"
            )));
        }
        if ((g_t + g_s) - 1.0).abs() > MIX_TOL {
            return Err(KgError::invalid(format!(
                "couplings must sum to one, got g_t + g_s = {}",
                g_t + g_s
            )));
        }
        Ok(CouplingMix { g_t, g_s })
    }
}

/// Incident energy ε = E/(mc²) and step height u = V₀/(mc²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringInput {
    pub energy: f64,
    pub step_height: f64,
    pub mix: CouplingMix,
}

impl ScatteringInput {
    /// Validates ε > 1 and u ≥ 0. A zero step is admitted as the free-propagation
    /// identity case.
    pub fn new(energy: f64, step_height: f64, mix: CouplingMix) -> Result<Self> {
        if !(energy.is_finite() && energy > 1.0) {
            return Err(KgError::invalid(format!(
                "energy must exceed the rest energy (epsilon > 1), got {energy}"
            )));
        }
        if !(step_height.is_finite() && step_height >= 0.0) {
            return Err(KgError::invalid(format!(
                "step height must be non-negative and finite, got {step_height}"
            )));
        }
        Ok(ScatteringInput { energy, step_height, mix })
    }

    /// Convenience constructor taking the vector share directly.
    pub fn with_vector_fraction(energy: f64, step_height: f64, g_t: f64) -> Result<Self> {
        ScatteringInput::new(energy, step_height, CouplingMix::vector_fraction(g_t)?)
    }

    /// Vector part of the step, g_t·u.
    pub fn vector_height(&self) -> f64 {
        self.mix.g_t * self.step_height
    }

    /// Scalar part of the step, g_s·u.
    pub fn scalar_height(&self) -> f64 {
        self.mix.g_s * self.step_height
    }

    /// Kinetic factor ε − g_t·u on the step side. Its sign is the sign of the
    /// charge density there.
    pub fn reduced_energy(&self) -> f64 {
        self.energy - self.vector_height()
    }

    /// Effective mass 1 + g_s·u on the step side.
    pub fn effective_mass(&self) -> f64 {
        1.0 + self.scalar_height()
    }
}

/// A threshold that is either a finite value or does not exist.
///
/// Serializes as a JSON number, or as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Finite(f64),
    Infinite,
}

impl Threshold {
    pub fn finite(self) -> Option<f64> {
        match self {
            Threshold::Finite(v) => Some(v),
            Threshold::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Threshold::Infinite)
    }

    /// `true` when `u` lies strictly below the threshold.
    pub fn exceeds(self, u: f64) -> bool {
        match self {
            Threshold::Finite(v) => u < v,
            Threshold::Infinite => true,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(v) => write!(f, "{v}"),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threshold::Finite(v) => s.serialize_f64(*v),
            Threshold::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Threshold::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Threshold::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}
