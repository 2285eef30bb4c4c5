//! Nonrelativistic reference: the Schrödinger step of height (g_t + g_s)·u,
//! to which the relativistic result reduces for ε → 1 and u ≪ 1.

use crate::error::{KgError, Result};
use crate::input::CouplingMix;

/// Reflection coefficient of a Schrödinger step for kinetic energy
/// `epsilon_nr` = E − mc² (units of mc²). In the nonrelativistic limit the
/// two couplings act alike, so the step height is (g_t + g_s)·u.
pub fn schrodinger_step_reference(epsilon_nr: f64, u: f64, mix: CouplingMix) -> Result<f64> {
    if !(epsilon_nr.is_finite() && epsilon_nr > 0.0) {
        return Err(KgError::invalid(format!(
            "nonrelativistic energy must be positive, got {epsilon_nr}"
        )));
    }
    let height = (mix.g_t + mix.g_s) * u;
    if epsilon_nr <= height {
        return Ok(1.0);
    }
    let k = (2.0 * epsilon_nr).sqrt();
    let k_step = (2.0 * (epsilon_nr - height)).sqrt();
    let ratio = (k - k_step) / (k + k_step);
    Ok(ratio * ratio)
}
