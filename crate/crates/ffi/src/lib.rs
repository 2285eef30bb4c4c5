//! C ABI for `kgstep`.
//!
//! Every entry point returns a [`KgStatus`]; results are written through out
//! pointers. Variable-length results (profiles, convergence tables) live behind
//! opaque handles that the caller releases with the matching `_free` function.
//! The message for the most recent failure on the calling thread is available
//! from [`kg_last_error_message`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use kgstep::oracle::{convergence_study, ConvergenceTable, IntegrationConfig};
use kgstep::{
    classify, coefficients, linspace, localization, stationary_profile, BoundaryDetail,
    CouplingMix, KgError, Kappa, Regime, ScatteringInput, StationaryProfile, Threshold,
};

/// Status codes. 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Singular = 3,
    OracleFailure = 4,
    OutOfRange = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgRegime {
    A = 0,
    B = 1,
    C = 2,
    Boundary = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgBoundary {
    None = 0,
    RestThreshold = 1,
    PairThreshold = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgKappaKind {
    Propagating = 0,
    Evanescent = 1,
    Zero = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KgComplex {
    pub re: f64,
    pub im: f64,
}

/// A threshold; `value` is meaningful only when `infinite` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgThreshold {
    pub value: f64,
    pub infinite: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgRegimeReport {
    pub regime: KgRegime,
    pub v_c: KgThreshold,
    pub v_m: KgThreshold,
    pub boundary_detail: KgBoundary,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgScattering {
    pub regime: KgRegime,
    pub k: f64,
    pub kappa_sq: f64,
    pub kappa: f64,
    pub kappa_kind: KgKappaKind,
    pub ratio_reflect: KgComplex,
    pub ratio_transmit_particle: KgComplex,
    pub ratio_transmit_anti: KgComplex,
    pub reflection: f64,
    pub transmission: f64,
    pub v_g_left: f64,
    pub v_g_right: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgLocalization {
    pub delta_x: f64,
    pub delta_x_min: f64,
    pub m_eff: f64,
    pub lambda_eff: f64,
    pub delta_p_max: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgProfileSample {
    pub x: f64,
    pub rho: f64,
    pub current: f64,
    pub mod_phi_sq: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KgConvergenceRow {
    pub width: f64,
    pub r_numeric: f64,
    pub r_closed: f64,
    pub abs_error: f64,
    pub current_drift: f64,
    pub converged: bool,
}

/// Sampled stationary profile.
pub struct KgProfile(StationaryProfile);

/// Oracle convergence table.
pub struct KgConvergence(ConvergenceTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(err: KgError) -> KgStatus {
    let status = match err.exit_code() {
        2 => KgStatus::InvalidInput,
        4 => KgStatus::OracleFailure,
        _ => KgStatus::Singular,
    };
    set_error(err.to_string());
    status
}

fn null_pointer(name: &str) -> KgStatus {
    set_error(format!("{name} is null"));
    KgStatus::NullPointer
}

fn input(energy: f64, v0: f64, g_t: f64) -> Result<ScatteringInput, KgStatus> {
    CouplingMix::vector_fraction(g_t)
        .and_then(|mix| ScatteringInput::new(energy, v0, mix))
        .map_err(fail)
}

fn regime(r: Regime) -> KgRegime {
    match r {
        Regime::A => KgRegime::A,
        Regime::B => KgRegime::B,
        Regime::C => KgRegime::C,
        Regime::Boundary => KgRegime::Boundary,
    }
}

fn threshold(t: Threshold) -> KgThreshold {
    match t {
        Threshold::Finite(value) => KgThreshold { value, infinite: false },
        Threshold::Infinite => KgThreshold { value: f64::INFINITY, infinite: true },
    }
}

macro_rules! complex {
    ($c:expr) => {
        KgComplex { re: $c.re, im: $c.im }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Regime and thresholds for (ε, u, g_t).
#[no_mangle]
pub unsafe extern "C" fn kg_classify(
    energy: f64,
    v0: f64,
    g_t: f64,
    out: *mut KgRegimeReport,
) -> KgStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let inp = match input(energy, v0, g_t) {
        Ok(i) => i,
        Err(s) => return s,
    };
    let r = classify(&inp);
    let boundary_detail = match r.boundary_detail {
        None => KgBoundary::None,
        Some(BoundaryDetail::RestThreshold) => KgBoundary::RestThreshold,
        Some(BoundaryDetail::PairThreshold) => KgBoundary::PairThreshold,
    };
    out.write(KgRegimeReport {
        regime: regime(r.regime),
        v_c: threshold(r.v_c),
        v_m: threshold(r.v_m),
        boundary_detail,
    });
    KgStatus::Ok
}

/// Amplitude ratios, R, T and group velocities. Boundary inputs and the
/// regime-C pole return `KG_STATUS_SINGULAR`.
#[no_mangle]
pub unsafe extern "C" fn kg_scatter(
    energy: f64,
    v0: f64,
    g_t: f64,
    out: *mut KgScattering,
) -> KgStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let sol = match input(energy, v0, g_t).and_then(|i| coefficients(&i).map_err(fail)) {
        Ok(s) => s,
        Err(s) => return s,
    };
    let kappa_kind = match sol.waves.kappa {
        Kappa::Propagating(_) => KgKappaKind::Propagating,
        Kappa::Evanescent(_) => KgKappaKind::Evanescent,
        Kappa::Zero => KgKappaKind::Zero,
    };
    out.write(KgScattering {
        regime: regime(sol.regime),
        k: sol.waves.k,
        kappa_sq: sol.waves.kappa_sq,
        kappa: sol.waves.kappa.magnitude(),
        kappa_kind,
        ratio_reflect: complex!(sol.ratio_reflect),
        ratio_transmit_particle: complex!(sol.ratio_transmit_particle),
        ratio_transmit_anti: complex!(sol.ratio_transmit_anti),
        reflection: sol.reflection,
        transmission: sol.transmission,
        v_g_left: sol.v_g_left,
        v_g_right: sol.v_g_right,
    });
    KgStatus::Ok
}

/// Decay length and effective Compton wavelength; regime B only.
#[no_mangle]
pub unsafe extern "C" fn kg_localization(
    energy: f64,
    v0: f64,
    g_t: f64,
    out: *mut KgLocalization,
) -> KgStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let rep = match input(energy, v0, g_t).and_then(|i| localization(&i).map_err(fail)) {
        Ok(r) => r,
        Err(s) => return s,
    };
    out.write(KgLocalization {
        delta_x: rep.delta_x,
        delta_x_min: rep.delta_x_min,
        m_eff: rep.m_eff,
        lambda_eff: rep.lambda_eff,
        delta_p_max: rep.delta_p_max,
    });
    KgStatus::Ok
}

/// Samples ρ, J and |φ|² at `samples` evenly spaced points of [xmin, xmax].
/// On success `*out` owns a handle to release with [`kg_profile_free`].
#[no_mangle]
pub unsafe extern "C" fn kg_profile_new(
    energy: f64,
    v0: f64,
    g_t: f64,
    xmin: f64,
    xmax: f64,
    samples: usize,
    out: *mut *mut KgProfile,
) -> KgStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    out.write(ptr::null_mut());
    if !(xmin < 0.0 && 0.0 < xmax) || samples < 2 {
        set_error(format!(
            "profile needs xmin < 0 < xmax and at least 2 samples, got [{xmin}, {xmax}] with {samples}"
        ));
        return KgStatus::InvalidInput;
    }
    let xs = linspace(xmin, xmax, samples);
    match input(energy, v0, g_t).and_then(|i| stationary_profile(&i, &xs).map_err(fail)) {
        Ok(p) => {
            out.write(Box::into_raw(Box::new(KgProfile(p))));
            KgStatus::Ok
        }
        Err(s) => s,
    }
}

#[no_mangle]
pub unsafe extern "C" fn kg_profile_len(profile: *const KgProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.xs.len())
}

#[no_mangle]
pub unsafe extern "C" fn kg_profile_sample(
    profile: *const KgProfile,
    index: usize,
    out: *mut KgProfileSample,
) -> KgStatus {
    let Some(p) = profile.as_ref() else { return null_pointer("profile") };
    if out.is_null() {
        return null_pointer("out");
    }
    let p = &p.0;
    if index >= p.xs.len() {
        set_error(format!("index {index} out of range for {} samples", p.xs.len()));
        return KgStatus::OutOfRange;
    }
    out.write(KgProfileSample {
        x: p.xs[index],
        rho: p.rho[index],
        current: p.current[index],
        mod_phi_sq: p.mod_phi_sq[index],
    });
    KgStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn kg_profile_free(profile: *mut KgProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Runs the logistic-step oracle for each of `n_widths` strictly decreasing
/// widths. A non-positive `domain_half_width` or zero `steps` selects the
/// automatic grid.
#[no_mangle]
pub unsafe extern "C" fn kg_oracle_compare(
    energy: f64,
    v0: f64,
    g_t: f64,
    widths: *const f64,
    n_widths: usize,
    domain_half_width: f64,
    steps: usize,
    out: *mut *mut KgConvergence,
) -> KgStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    out.write(ptr::null_mut());
    if widths.is_null() {
        return null_pointer("widths");
    }
    let widths = std::slice::from_raw_parts(widths, n_widths);
    let config = IntegrationConfig {
        domain_half_width: (domain_half_width > 0.0).then_some(domain_half_width),
        step_count: (steps > 0).then_some(steps),
    };
    let table = input(energy, v0, g_t).and_then(|i| {
        convergence_study(i.energy, i.step_height, i.mix, widths, &config).map_err(fail)
    });
    match table {
        Ok(t) => {
            out.write(Box::into_raw(Box::new(KgConvergence(t))));
            KgStatus::Ok
        }
        Err(s) => s,
    }
}

#[no_mangle]
pub unsafe extern "C" fn kg_convergence_len(table: *const KgConvergence) -> usize {
    table.as_ref().map_or(0, |t| t.0.rows.len())
}

/// True when the error is non-increasing over the last three widths, the final
/// error meets the tolerance and every run conserved the current.
#[no_mangle]
pub unsafe extern "C" fn kg_convergence_ok(table: *const KgConvergence) -> bool {
    table.as_ref().is_some_and(|t| t.0.converged())
}

#[no_mangle]
pub unsafe extern "C" fn kg_convergence_row(
    table: *const KgConvergence,
    index: usize,
    out: *mut KgConvergenceRow,
) -> KgStatus {
    let Some(t) = table.as_ref() else { return null_pointer("table") };
    if out.is_null() {
        return null_pointer("out");
    }
    let Some(row) = t.0.rows.get(index) else {
        set_error(format!("index {index} out of range for {} rows", t.0.rows.len()));
        return KgStatus::OutOfRange;
    };
    out.write(KgConvergenceRow {
        width: row.width,
        r_numeric: row.r_numeric,
        r_closed: row.r_closed,
        abs_error: row.abs_error,
        current_drift: row.current_drift,
        converged: row.converged,
    });
    KgStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn kg_convergence_free(table: *mut KgConvergence) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
