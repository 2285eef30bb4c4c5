//! Unit bookkeeping. Every computation in this crate runs in natural units
//! (m = c = ħ = 1): energies in mc², lengths in ħ/(mc), velocities in c.
//! A [`UnitSystem`] is only consulted when values are displayed.

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitMode {
    Natural,
    SiLike,
}

/// Physical dimension of a displayed quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Dimensionless,
    Energy,
    Length,
    InverseLength,
    InverseLengthSquared,
    Velocity,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub mode: UnitMode,
    /// Rest mass m.
    pub mass: f64,
    /// Speed of light.
    pub c: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
}

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

impl UnitSystem {
    pub const NATURAL: UnitSystem = UnitSystem {
        mode: UnitMode::Natural,
        mass: 1.0,
        c: 1.0,
        hbar: 1.0,
    };

    /// SI units (kg, m/s, J·s) for a particle of the given rest mass in kg.
    pub fn si(mass: f64) -> Result<Self> {
        UnitSystem::new(UnitMode::SiLike, mass, SPEED_OF_LIGHT, HBAR)
    }

    pub fn new(mode: UnitMode, mass: f64, c: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("c", c), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(KgError::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if mode == UnitMode::Natural && (mass != 1.0 || c != 1.0 || hbar != 1.0) {
            return Err(KgError::invalid("natural units require m = c = hbar = 1"));
        }
        Ok(UnitSystem { mode, mass, c, hbar })
    }

    /// Scale factor taking a natural-unit value of `dim` into this system.
    pub fn scale(&self, dim: Dimension) -> f64 {
        let (m, c, hbar) = (self.mass, self.c, self.hbar);
        match dim {
            Dimension::Dimensionless => 1.0,
            Dimension::Energy => m * c * c,
            Dimension::Length => hbar / (m * c),
            Dimension::InverseLength => m * c / hbar,
            Dimension::InverseLengthSquared => (m * c / hbar).powi(2),
            Dimension::Velocity => c,
            Dimension::Momentum => m * c,
        }
    }

    pub fn display(&self, value: f64, dim: Dimension) -> f64 {
        value * self.scale(dim)
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::NATURAL
    }
}
