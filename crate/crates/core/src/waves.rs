//! Wave numbers on either side of the step.

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::ScatteringInput;

/// Character of the wave number on the step side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kappa {
    /// κ² > 0, κ is the (positive) real wave number.
    Propagating(f64),
    /// κ² < 0, the value is the decay rate |κ|.
    Evanescent(f64),
    /// κ² = 0 exactly: the non-normalizable constant mode.
    Zero,
}

impl Kappa {
    pub fn magnitude(self) -> f64 {
        match self {
            Kappa::Propagating(v) | Kappa::Evanescent(v) => v,
            Kappa::Zero => 0.0,
        }
    }

    pub fn is_propagating(self) -> bool {
        matches!(self, Kappa::Propagating(_))
    }

    pub fn is_evanescent(self) -> bool {
        matches!(self, Kappa::Evanescent(_))
    }

    pub fn kind(self) -> &'static str {
        match self {
            Kappa::Propagating(_) => "propagating",
            Kappa::Evanescent(_) => "evanescent",
            Kappa::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveNumbers {
    /// Free-side wave number, units of mc/ħ.
    pub k: f64,
    /// κ² = (ε − g_t·u)² − (1 + g_s·u)², may be negative.
    pub kappa_sq: f64,
    pub kappa: Kappa,
}

/// Free-side wave number k = √(ε² − 1).
pub fn wave_number_free(input: &ScatteringInput) -> Result<f64> {
    free_wave_number(input.energy)
}

pub(crate) fn free_wave_number(energy: f64) -> Result<f64> {
    if !(energy > 1.0) {
        return Err(KgError::invalid(format!(
            "no propagating incident particle for epsilon = {energy} (need epsilon > 1)"
        )));
    }
    // (ε − 1)(ε + 1) keeps relative accuracy near threshold.
    Ok(((energy - 1.0) * (energy + 1.0)).sqrt())
}

/// κ² evaluated in factored form,
/// (ε − 1 − u)·(ε + 1 + (g_s − g_t)·u),
/// which is exact at the two roots u = ε − 1 and u = V_c.
pub(crate) fn kappa_squared(input: &ScatteringInput) -> f64 {
    let u = input.step_height;
    let below_rest = input.energy - 1.0 - u;
    let below_pair = input.energy + 1.0 + (input.mix.g_s - input.mix.g_t) * u;
    below_rest * below_pair
}

/// Wave numbers k and κ for the sharp step.
pub fn wave_number_step(input: &ScatteringInput) -> Result<WaveNumbers> {
    let k = wave_number_free(input)?;
    let kappa_sq = kappa_squared(input);
    let kappa = if kappa_sq > 0.0 {
        Kappa::Propagating(kappa_sq.sqrt())
    } else if kappa_sq < 0.0 {
        Kappa::Evanescent((-kappa_sq).sqrt())
    } else {
        Kappa::Zero
    };
    Ok(WaveNumbers { k, kappa_sq, kappa })
}
