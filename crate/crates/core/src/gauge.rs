//! Local phase Λ(x) = ∫ V_e(y)/(ħc) dy generated by the spatial component of
//! the vector potential.
//!
//! The phase multiplies the stationary factor φ, so |φ|², the density and the
//! current are unchanged by it. The lower limit x₀ is the first sample of the
//! grid supplied by the caller; moving it adds a constant to Λ and has no
//! observable effect.

use num_complex::Complex64;

use crate::error::{KgError, Result};

/// Cumulative composite-trapezoid integral of `v_e` sampled on `xs`, in natural
/// units. `xs` must be strictly increasing; the result starts at 0 at `xs[0]`.
pub fn gauge_phase(xs: &[f64], v_e: &[f64]) -> Result<Vec<f64>> {
    if xs.len() != v_e.len() {
        return Err(KgError::invalid(format!(
            "{} positions but {} potential samples",
            xs.len(),
            v_e.len()
        )));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(KgError::invalid("positions must be strictly increasing"));
    }
    let mut phase = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    for i in 0..xs.len() {
        if i > 0 {
            acc += 0.5 * (xs[i] - xs[i - 1]) * (v_e[i] + v_e[i - 1]);
        }
        phase.push(acc);
    }
    Ok(phase)
}

/// Λ(x) for a potential given as a function, integrated from `x0` with
/// `intervals` trapezoid panels.
pub fn gauge_phase_at(v_e: impl Fn(f64) -> f64, x0: f64, x: f64, intervals: usize) -> f64 {
    let n = intervals.max(1);
    let h = (x - x0) / n as f64;
    let interior: f64 = (1..n).map(|i| v_e(x0 + h * i as f64)).sum();
    h * (0.5 * (v_e(x0) + v_e(x)) + interior)
}

/// φ·e^{iΛ} sample by sample.
pub fn apply_phase(phi: &[Complex64], phase: &[f64]) -> Vec<Complex64> {
    phi.iter()
        .zip(phase)
        .map(|(p, &l)| p * Complex64::from_polar(1.0, l))
        .collect()
}
