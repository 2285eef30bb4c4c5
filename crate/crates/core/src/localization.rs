//! Penetration depth of the evanescent wave and the effective Compton
//! wavelength that bounds it.
//!
//! The decay length Δx = 1/(2|κ|) is where the density falls to 1/e of its
//! interface value. Since |κ|² = (1 + g_s·u)² − (ε − g_t·u)², Δx never drops
//! below half the effective Compton wavelength λ_eff = 1/(1 + g_s·u), and the
//! bound is reached exactly when ε = g_t·u, i.e. at the step height V_m = ε/g_t.

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::ScatteringInput;
use crate::regime::{classify, localization_step, Regime};
use crate::waves::{kappa_squared, Kappa};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    /// Decay length 1/(2|κ|) at this input.
    pub delta_x: f64,
    /// λ_eff/2, the smallest Δx reachable at this step height.
    pub delta_x_min: f64,
    pub m_eff: f64,
    pub lambda_eff: f64,
    pub delta_p_max: f64,
}

pub fn localization(input: &ScatteringInput) -> Result<LocalizationReport> {
    let report = classify(input);
    if report.regime != Regime::B {
        return Err(KgError::Domain(format!(
            "localization needs the evanescent regime B, input is in {}",
            report.regime
        )));
    }
    let decay = match crate::waves::wave_number_step(input)?.kappa {
        Kappa::Evanescent(d) => d,
        other => {
            return Err(KgError::Domain(format!("expected evanescent kappa, got {}", other.kind())))
        }
    };
    let m_eff = input.effective_mass();
    let lambda_eff = 1.0 / m_eff;
    Ok(LocalizationReport {
        delta_x: 0.5 / decay,
        delta_x_min: 0.5 * lambda_eff,
        m_eff,
        lambda_eff,
        delta_p_max: m_eff,
    })
}

/// Grid settings for [`localization_minimizer_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    /// Spacing of the u grid.
    pub step: f64,
    /// Upper end of the scan when V_c is infinite. Defaults to 2·V_m.
    pub cap: Option<f64>,
}

impl ScanGrid {
    pub fn with_step(step: f64) -> Self {
        ScanGrid { step, cap: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizerScan {
    /// Grid point with the smallest Δx/λ_eff.
    pub argmin_grid: f64,
    /// Golden-section refinement inside the neighbouring cells.
    pub argmin: f64,
    pub grid_step: f64,
    /// Closed-form location V_m = ε/g_t.
    pub v_m: f64,
    /// Δx at the refined minimizer.
    pub delta_x: f64,
    /// λ_eff/2 at the refined minimizer.
    pub delta_x_min: f64,
    pub samples: usize,
}

fn decay_length(energy: f64, g_t: f64, g_s: f64, u: f64) -> f64 {
    let inp = ScatteringInput { energy, step_height: u, mix: crate::input::CouplingMix { g_t, g_s } };
    0.5 / (-kappa_squared(&inp)).sqrt()
}

/// Scans the evanescent window ε − 1 < u < V_c for the step height at which
/// Δx(u) comes closest to its floor λ_eff(u)/2, i.e. minimizes
/// Δx(u)·m_eff(u). For a pure vector step m_eff = 1 and this is the plain
/// minimum of Δx(u).
///
/// With g_s > 0 the bare decay length keeps shrinking past V_m because the
/// effective mass grows with u; normalizing by λ_eff isolates the point where
/// the bound is saturated.
pub fn localization_minimizer_scan(
    energy: f64,
    mix: crate::input::CouplingMix,
    grid: ScanGrid,
) -> Result<MinimizerScan> {
    let v_m = localization_step(energy, mix)
        .finite()
        .ok_or_else(|| KgError::Domain("g_t = 0: V_m is infinite, no interior minimum".into()))?;
    if !(grid.step.is_finite() && grid.step > 0.0) {
        return Err(KgError::invalid(format!("grid step must be positive, got {}", grid.step)));
    }
    if !(energy > 1.0) {
        return Err(KgError::invalid(format!("energy must exceed 1, got {energy}")));
    }
    let lo = energy - 1.0;
    let hi = match crate::regime::pair_threshold(energy, mix).finite() {
        Some(v_c) => v_c,
        None => grid.cap.unwrap_or(2.0 * v_m),
    };
    let (g_t, g_s) = (mix.g_t, mix.g_s);
    let objective = |u: f64| decay_length(energy, g_t, g_s, u) * (1.0 + g_s * u);

    let grid_points: Vec<f64> = (1..)
        .map(|i| lo + grid.step * i as f64)
        .take_while(|&u| u < hi)
        .collect();
    if grid_points.is_empty() {
        return Err(KgError::Domain(format!(
            "no grid point inside the evanescent window ({lo}, {hi})"
        )));
    }

    let (best, _) = grid_points
        .iter()
        .map(|&u| objective(u))
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let argmin_grid = grid_points[best];

    let a = if best == 0 { lo } else { grid_points[best - 1] };
    let b = grid_points.get(best + 1).copied().unwrap_or(hi);
    let argmin = golden_section(objective, a, b, 1e-14 * v_m.max(1.0));

    Ok(MinimizerScan {
        argmin_grid,
        argmin,
        grid_step: grid.step,
        v_m,
        delta_x: decay_length(energy, g_t, g_s, argmin),
        delta_x_min: 0.5 / (1.0 + g_s * argmin),
        samples: grid_points.len(),
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
