use serde::{Deserialize, Serialize};

use super::flux::extract_fluxes;
use super::integrate::{integrate_stationary, IntegrationConfig};
use super::potential::PotentialProfile;
use crate::error::{KgError, Result};
use crate::input::CouplingMix;
use crate::scattering::coefficients;

/// Required |R_numeric − R_closed| at the smallest width.
pub const FINAL_TOLERANCE: f64 = 1e-3;
/// Errors below this are round-off and compare as equal in the monotonicity
/// check.
pub const ERROR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub width: f64,
    #[serde(rename = "R_numeric")]
    pub r_numeric: f64,
    #[serde(rename = "R_closed")]
    pub r_closed: f64,
    pub abs_error: f64,
    pub current_drift: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Error non-increasing over the final three widths (or all, if fewer).
    /// `None` for a single width.
    pub monotone: Option<bool>,
    pub final_within_tolerance: bool,
}

impl ConvergenceTable {
    pub fn converged(&self) -> bool {
        self.monotone != Some(false)
            && self.final_within_tolerance
            && self.rows.iter().all(|r| r.converged)
    }
}

/// Runs the logistic-step oracle over a strictly decreasing width sequence and
/// tabulates the distance to the sharp-step reflection coefficient.
pub fn convergence_study(
    energy: f64,
    height: f64,
    mix: CouplingMix,
    widths: &[f64],
    config: &IntegrationConfig,
) -> Result<ConvergenceTable> {
    if widths.is_empty() {
        return Err(KgError::invalid("at least one width is required"));
    }
    if widths.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(KgError::invalid("widths must be positive"));
    }
    if widths.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(KgError::invalid("widths must be strictly decreasing"));
    }

    let sharp = PotentialProfile::sharp(height, mix)?;
    let r_closed = coefficients(&sharp.asymptotic_input(energy)?)?.reflection;

    let mut rows = Vec::with_capacity(widths.len());
    for &width in widths {
        let profile = PotentialProfile::logistic(height, width, mix)?;
        let solution = integrate_stationary(&profile, energy, config)?;
        let fluxes = extract_fluxes(&solution, &profile, energy)?;
        rows.push(ConvergenceRow {
            width,
            r_numeric: fluxes.r_numeric,
            r_closed,
            abs_error: (fluxes.r_numeric - r_closed).abs(),
            current_drift: fluxes.current_drift,
            converged: fluxes.converged,
        });
    }

    let monotone = (rows.len() > 1).then(|| {
        let tail = &rows[rows.len().saturating_sub(3)..];
        tail.windows(2)
            .all(|w| w[1].abs_error <= w[0].abs_error.max(ERROR_FLOOR))
    });
    let final_within_tolerance = rows.last().is_some_and(|r| r.abs_error <= FINAL_TOLERANCE);

    Ok(ConvergenceTable { rows, monotone, final_within_tolerance })
}
