//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p kgstep --test acceptance`.

use kgstep::localization::{localization_minimizer_scan, ScanGrid};
use kgstep::oracle::{convergence_study, IntegrationConfig};
use kgstep::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn mix(g_t: f64) -> CouplingMix {
    CouplingMix::vector_fraction(g_t).unwrap()
}

fn input(e: f64, u: f64, g_t: f64) -> ScatteringInput {
    ScatteringInput::with_vector_fraction(e, u, g_t).unwrap()
}

fn flux_conservation() -> Outcome {
    let (mut checked, mut skipped, mut worst) = (0, 0, 0.0f64);
    for i in 1..=50 {
        let e = 1.0 + 9.0 * i as f64 / 50.0;
        for j in 1..=50 {
            let u = 20.0 * j as f64 / 50.0;
            for g in 0..=10 {
                let g_t = g as f64 / 10.0;
                match coefficients(&input(e, u, g_t)) {
                    Ok(s) => {
                        worst = worst.max((s.reflection + s.transmission - 1.0).abs());
                        checked += 1;
                    }
                    Err(KgError::Boundary(_) | KgError::Pole { .. }) => skipped += 1,
                    Err(err) => return Err(format!("ε = {e}, u = {u}, g_t = {g_t}: {err}")),
                }
            }
        }
    }
    let msg = format!("{checked} points, {skipped} boundary/pole skipped, max |R+T−1| = {worst:.2e}");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn minimum_threshold() -> Outcome {
    let v_c = pair_threshold(1.0, CouplingMix::PURE_VECTOR);
    if v_c != Threshold::Finite(2.0) {
        return Err(format!("v_c(ε = 1, g_t = 1) = {v_c:?}"));
    }
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    for g in 0..=50 {
        let g_t = g as f64 / 100.0;
        for _ in 0..20 {
            let e = rng.gen_range(1.0001..100.0);
            for p in 0..=60 {
                let u = 10f64.powf(-3.0 + 9.0 * p as f64 / 60.0);
                let regime = classify(&input(e, u, g_t)).regime;
                if regime == Regime::C {
                    return Err(format!("regime C at ε = {e}, u = {u}, g_t = {g_t}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("v_c = 2 exactly; {checked} inputs with g_t ≤ 1/2, u ≤ 1e6, none in C"))
}

fn klein_paradox() -> Outcome {
    const R_FIXTURE: f64 = 17.302203894596787;
    const T_FIXTURE: f64 = -16.302203894596787;
    let s = coefficients(&input(2.0, 5.0, 1.0)).map_err(|e| e.to_string())?;
    let msg = format!("regime {}, R = {:.12}, T = {:.12}", s.regime, s.reflection, s.transmission);
    let ok = s.regime == Regime::C
        && s.reflection > 1.0
        && s.transmission < 0.0
        && (s.reflection + s.transmission - 1.0).abs() <= 1e-12
        && (s.reflection - R_FIXTURE).abs() <= 1e-12 * R_FIXTURE
        && (s.transmission - T_FIXTURE).abs() <= 1e-12 * R_FIXTURE
        && (s.reflection - 17.31).abs() < 1e-2
        && (s.transmission + 16.31).abs() < 1e-2;
    if ok { Ok(msg) } else { Err(msg) }
}

fn localization_law() -> Outcome {
    let mut rng = StdRng::seed_from_u64(21);
    let (mut worst_value, mut worst_identity, mut worst_cells) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let e = rng.gen_range(1.1..10.0);
        let m = mix(rng.gen_range(0.05..=1.0));
        let v_m = localization_step(e, m).finite().unwrap();
        let hi = pair_threshold(e, m).finite().unwrap_or(2.0 * v_m);
        let step = (hi - (e - 1.0)) / 2000.0;
        let scan = localization_minimizer_scan(e, m, ScanGrid::with_step(step)).map_err(|e| e.to_string())?;
        worst_cells = worst_cells.max((scan.argmin_grid - v_m).abs() / step);
        let expected = 0.5 / (1.0 + m.g_s * scan.argmin);
        worst_value = worst_value.max((scan.delta_x - expected).abs());
        let rep = localization(&ScatteringInput::new(e, scan.argmin, m).unwrap()).map_err(|e| e.to_string())?;
        worst_identity = worst_identity.max((rep.delta_x_min * rep.delta_p_max - 0.5).abs());
    }
    let msg = format!(
        "argmin within {worst_cells:.3} cells of ε/g_t, |Δx − 1/(2(1+g_s u))| ≤ {worst_value:.1e}, \
         |Δx_min·Δp_max − 1/2| ≤ {worst_identity:.1e}"
    );
    // "exactly" is read as: to the rounding of one division and one product
    if worst_cells <= 1.0 && worst_value <= 1e-9 && worst_identity <= 2.0 * f64::EPSILON {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn threshold_ordering() -> Outcome {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..1000 {
        let e = rng.gen_range(1.0001..100.0);
        let m = mix(rng.gen_range(0.500001..=1.0));
        let v_m = localization_step(e, m).finite().unwrap();
        let v_c = pair_threshold(e, m).finite().unwrap();
        if v_m >= v_c {
            return Err(format!("v_m = {v_m} ≥ v_c = {v_c} at ε = {e}, g_t = {}", m.g_t));
        }
    }
    Ok("1000 samples, v_m < v_c throughout".into())
}

fn oracle_convergence() -> Outcome {
    let widths = [0.1, 0.01, 0.001];
    let cases = [("A", 3.0, 1.0, 1.0), ("B", 2.0, 2.0, 1.0), ("C", 2.0, 10.0, 1.0)];
    let tables = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&(_, e, u, g_t)| {
                s.spawn(move || convergence_study(e, u, mix(g_t), &widths, &IntegrationConfig::default()))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
    });
    let mut ok = true;
    let mut parts = Vec::new();
    for ((name, ..), table) in cases.iter().zip(tables) {
        let t = table.map_err(|e| format!("regime {name}: {e}"))?;
        let errors: Vec<f64> = t.rows.iter().map(|r| r.abs_error).collect();
        // each row's flag is current_drift ≤ 1e-6·|J|
        let drift_ok = t.rows.iter().all(|r| r.converged);
        ok &= t.monotone == Some(true) && t.final_within_tolerance && drift_ok;
        parts.push(format!(
            "{name}: errors [{}] drift {}",
            errors.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>().join(", "),
            if drift_ok { "ok" } else { "exceeded" }
        ));
    }
    let msg = parts.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn nonrelativistic_limit() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for g_t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let m = mix(g_t);
        let diffs: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&eta| {
                let u = eta / 2.0;
                let kg = coefficients(&ScatteringInput::new(1.0 + eta, u, m).unwrap()).unwrap();
                let diff = (kg.reflection - schrodinger_step_reference(eta, u, m).unwrap()).abs();
                ok &= diff <= 5.0 * eta;
                diff
            })
            .collect();
        // a difference already at round-off level cannot decrease further
        ok &= diffs.windows(2).all(|w| w[1] < w[0] || w[1] <= 1e-12);
        parts.push(format!(
            "g_t={g_t}: [{}]",
            diffs.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>().join(", ")
        ));
    }
    let msg = parts.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn interface_continuity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(41);
    let (mut checked, mut worst) = (0, 0.0f64);
    while checked < 1000 {
        let inp = input(rng.gen_range(1.001..10.0), rng.gen_range(0.001..20.0), rng.gen_range(0.0..=1.0));
        let Ok(a) = amplitudes(&inp) else { continue };
        let [(l, dl), (r, dr)] = a.interface_values();
        worst = worst.max((l - r).norm()).max((dl - dr).norm());
        checked += 1;
    }
    let msg = format!("{checked} inputs, max mismatch {worst:.2e}");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("flux conservation", flux_conservation),
        ("minimum threshold", minimum_threshold),
        ("Klein paradox", klein_paradox),
        ("localization law", localization_law),
        ("threshold ordering", threshold_ordering),
        ("oracle convergence", oracle_convergence),
        ("nonrelativistic limit", nonrelativistic_limit),
        ("interface continuity", interface_continuity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
