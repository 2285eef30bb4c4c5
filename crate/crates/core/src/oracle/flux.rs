use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integrate::StationarySolution;
use super::potential::PotentialProfile;
use crate::error::{KgError, Result};
use crate::regime::Regime;

/// Relative current drift above which a run is flagged as not converged.
pub const DRIFT_TOLERANCE: f64 = 1e-6;
const MIN_INCIDENT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(rename = "R_numeric")]
    pub r_numeric: f64,
    /// 1 − R_numeric.
    #[serde(rename = "T_numeric")]
    pub t_numeric: f64,
    /// J(+L)/J_incident, the transmitted-current ratio.
    #[serde(rename = "T_from_current")]
    pub t_from_current: f64,
    /// max |J(x) − J(−L)| over the grid.
    pub current_drift: f64,
    /// J(−L), the net current.
    pub current: f64,
    pub regime_used: Regime,
    pub converged: bool,
}

/// Splits φ at x = −L into A₊e^{ikx} + A₋e^{−ikx} and forms R and T from
/// current ratios.
pub fn extract_fluxes(
    solution: &StationarySolution,
    profile: &PotentialProfile,
    energy: f64,
) -> Result<OracleResult> {
    let n = solution.xs.len();
    if n < 2 || solution.phi.len() != n || solution.dphi.len() != n {
        return Err(KgError::invalid("solution arrays are empty or of unequal length"));
    }
    let x0 = solution.xs[0];
    let q = profile.local_wave_sq(energy, profile.value_in_cell(x0, x0));
    if !(q > 0.0) {
        return Err(KgError::Domain(format!("no propagating wave at x = -L (q = {q})")));
    }
    let k = q.sqrt();
    let i = Complex64::i();
    let (phi, dphi) = (solution.phi[0], solution.dphi[0]);
    let scaled = dphi / (i * k);
    let a_plus = 0.5 * (phi + scaled) * (-i * k * x0).exp();
    let a_minus = 0.5 * (phi - scaled) * (i * k * x0).exp();
    if a_plus.norm() < MIN_INCIDENT {
        return Err(KgError::Decomposition { magnitude: a_plus.norm() });
    }

    let r_numeric = a_minus.norm_sqr() / a_plus.norm_sqr();
    let currents: Vec<f64> = solution
        .phi
        .iter()
        .zip(&solution.dphi)
        .map(|(p, d)| (p.conj() * d).im)
        .collect();
    let j_ref = currents[0];
    let current_drift = currents.iter().map(|j| (j - j_ref).abs()).fold(0.0, f64::max);
    let j_incident = k * a_plus.norm_sqr();

    Ok(OracleResult {
        r_numeric,
        t_numeric: 1.0 - r_numeric,
        t_from_current: currents[n - 1] / j_incident,
        current_drift,
        current: j_ref,
        regime_used: solution.regime,
        converged: current_drift <= DRIFT_TOLERANCE * j_ref.abs(),
    })
}
