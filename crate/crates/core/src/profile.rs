//! Sampled charge density and current of the stationary state.

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::ScatteringInput;
use crate::scattering::amplitudes;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryProfile {
    pub xs: Vec<f64>,
    /// Charge density (ε − V_t)|φ|², sign-carrying.
    pub rho: Vec<f64>,
    /// Current Im(φ* dφ/dx).
    pub current: Vec<f64>,
    pub mod_phi_sq: Vec<f64>,
}

/// Evaluates ρ, J and |φ|² of the A₊ = 1 stationary state at each of `xs`.
///
/// Samples with x < 0 lie on the free side, x ≥ 0 on the step.
pub fn stationary_profile(input: &ScatteringInput, xs: &[f64]) -> Result<StationaryProfile> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(KgError::invalid("positions must be finite"));
    }
    let amps = amplitudes(input)?;
    let n = xs.len();
    let mut profile = StationaryProfile {
        xs: xs.to_vec(),
        rho: Vec::with_capacity(n),
        current: Vec::with_capacity(n),
        mod_phi_sq: Vec::with_capacity(n),
    };
    for &x in xs {
        let (phi, dphi) = amps.wavefunction(x);
        let density_factor = if x < 0.0 { input.energy } else { input.reduced_energy() };
        let mod_sq = phi.norm_sqr();
        profile.mod_phi_sq.push(mod_sq);
        profile.rho.push(density_factor * mod_sq);
        profile.current.push((phi.conj() * dphi).im);
    }
    Ok(profile)
}

/// `n` evenly spaced samples on [xmin, xmax], endpoints included.
pub fn linspace(xmin: f64, xmax: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![xmin],
        _ => {
            let span = xmax - xmin;
            let last = (n - 1) as f64;
            (0..n).map(|i| xmin + span * (i as f64) / last).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(e: f64, u: f64, g_t: f64) -> ScatteringInput {
        ScatteringInput::with_vector_fraction(e, u, g_t).unwrap()
    }

    fn spread(v: &[f64]) -> f64 {
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    }

    #[test]
    fn plane_wave_without_step() {
        let inp = input(1.8, 0.0, 0.6);
        let p = stationary_profile(&inp, &linspace(-7.0, 7.0, 301)).unwrap();
        let k = (1.8f64 * 1.8 - 1.0).sqrt();
        for (&rho, &j) in p.rho.iter().zip(&p.current) {
            assert!((rho - 1.8).abs() < 1e-12);
            assert!((j - k).abs() < 1e-12);
        }
    }

    #[test]
    fn evanescent_profile() {
        let inp = input(2.0, 2.0, 1.0);
        let p = stationary_profile(&inp, &linspace(-5.0, 5.0, 201)).unwrap();
        assert!(p.current.iter().all(|j| j.abs() < 1e-12));
        for (i, &x) in p.xs.iter().enumerate() {
            if x >= 0.0 {
                // ε = g_t·u: the density vanishes on the step side
                assert_eq!(p.rho[i], 0.0);
                assert!(p.mod_phi_sq[i] > 0.0);
            } else {
                assert!(p.rho[i] >= 0.0);
            }
        }
    }

    #[test]
    fn klein_profile_has_negative_density() {
        let inp = input(2.0, 5.0, 1.0);
        let p = stationary_profile(&inp, &linspace(-4.0, 4.0, 161)).unwrap();
        for (i, &x) in p.xs.iter().enumerate() {
            if x > 0.0 {
                assert!(p.rho[i] < 0.0);
            } else if x < 0.0 {
                assert!(p.rho[i] > 0.0);
            }
        }
        // J = k(1 − R) = −16.30 k on both sides
        assert!(spread(&p.current) < 1e-10);
        assert!(p.current[0] < 0.0);
    }

    #[test]
    fn current_is_constant() {
        for inp in [input(3.0, 1.0, 1.0), input(5.0, 2.0, 0.2), input(1.3, 25.0, 0.9)] {
            let p = stationary_profile(&inp, &linspace(-20.0, 20.0, 1001)).unwrap();
            assert!(spread(&p.current) < 1e-10, "{inp:?}");
        }
    }

    #[test]
    fn linspace_edges() {
        assert_eq!(linspace(0.0, 1.0, 0), Vec::<f64>::new());
        assert_eq!(linspace(-1.0, 1.0, 3), vec![-1.0, 0.0, 1.0]);
    }
}
