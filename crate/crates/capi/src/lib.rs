// Guards written as `!(x > 0.0)` deliberately reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! C ABI over the enstrolab library: opaque handles, status codes, plain
//! C structs. The header `include/enstrolab.h` is generated by cbindgen at
//! build time.
//!
//! Conventions carried across the boundary: the torus solver works on the
//! 2π-periodic square with volume-normalized norms; radial evaluators use
//! f̂(ξ) = ∫ f e^{-ix·ξ} dx with Plancherel factor (2π)⁻².

use enstrolab::bounds::{self, BudgetKind, EnvelopeFn, PsiKind};
use enstrolab::cantor::{self, CantorRule};
use enstrolab::radial::{self, BumpProfile};
use enstrolab::spectral2d::{SolverConfig, SolverState, TORUS_SIDE};
use enstrolab::{Error, GridField};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnstrolabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NumericalFailure = 3,
    GeometryViolation = 4,
    ResolutionError = 5,
    CflViolation = 6,
}

fn status_of(err: &Error) -> EnstrolabStatus {
    match err {
        Error::GeometryViolation(_) => EnstrolabStatus::GeometryViolation,
        Error::ResolutionError(_) => EnstrolabStatus::ResolutionError,
        Error::CflViolation { .. } => EnstrolabStatus::CflViolation,
        Error::QuadratureFailure(_) | Error::NonFinite(_) | Error::NonIntegrableTail(_) => {
            EnstrolabStatus::NumericalFailure
        }
        _ => EnstrolabStatus::InvalidArgument,
    }
}

/// Bessel function of the first kind, order zero.
#[no_mangle]
pub extern "C" fn enstrolab_bessel_j0(x: f64) -> f64 {
    enstrolab::bessel::j0(x)
}

/// Bessel function of the first kind, order one.
#[no_mangle]
pub extern "C" fn enstrolab_bessel_j1(x: f64) -> f64 {
    enstrolab::bessel::j1(x)
}

/// Enstrophy of the heat-evolved circle measure at s = νt.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_circle_enstrophy(s: f64, out: *mut f64) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    match radial::circle_enstrophy(s) {
        Ok(v) => {
            *out = v;
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// ‖ω^ν(t)‖² for the integrable log-decay datum (νt ∈ (0,1)).
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_logdatum_enstrophy(
    nu: f64,
    t: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    match radial::logdatum_enstrophy(nu, t) {
        Ok(v) => {
            *out = v;
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// ‖μ^ν(t)‖² of the rescaled compact bump via the exact scaling identity.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_rescaled_bump_enstrophy(
    nu: f64,
    t: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    match radial::rescaled_bump_enstrophy(nu, t, &BumpProfile::CompactExp) {
        Ok(v) => {
            *out = v;
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Budget kinds for `enstrolab_dissipation_budget`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum EnstrolabBudgetKind {
    /// (νT)^{α/2}; `param` is α ∈ (0,2).
    Algebraic = 0,
    /// log(T/δ)/√|log(νT)|; `param` unused.
    Delort = 1,
    /// (νT)^{2(p-1)/p}; `param` is p > 1.
    Lp = 2,
}

/// Dissipation budget with unit constant; requires νT < 1.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_dissipation_budget(
    kind: EnstrolabBudgetKind,
    param: f64,
    nu: f64,
    delta: f64,
    t_end: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    let kind = match kind {
        EnstrolabBudgetKind::Algebraic => BudgetKind::Algebraic { alpha: param },
        EnstrolabBudgetKind::Delort => BudgetKind::Delort,
        EnstrolabBudgetKind::Lp => BudgetKind::Lp { p: param },
    };
    match bounds::dissipation_budget(kind, nu, delta, t_end) {
        Ok(v) => {
            *out = v;
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Closed-form norms and saturation ratio of a Cantor family member.
#[repr(C)]
pub struct EnstrolabCantorNorms {
    pub l1: f64,
    pub l2_sq_log: f64,
    pub h1_sq_log: f64,
    pub delta_log: f64,
    pub saturation: f64,
}

/// Cantor rule selector: 0 = algebraic (uses `alpha`), 1 = log-sparse.
///
/// # Safety
/// `out` must point to a writable EnstrolabCantorNorms.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_cantor_norms(
    rule: i32,
    alpha: f64,
    n: u32,
    out: *mut EnstrolabCantorNorms,
) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    let rule = match rule {
        0 => CantorRule::Algebraic { alpha },
        1 => CantorRule::LogSparse,
        _ => return EnstrolabStatus::InvalidArgument,
    };
    let family = match cantor::build_family(rule, n) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    let bundle = family.norms();
    let saturation = match cantor::saturation_ratio(rule, n) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    *out = EnstrolabCantorNorms {
        l1: bundle.l1,
        l2_sq_log: bundle.l2_sq_log,
        h1_sq_log: bundle.h1_sq_log,
        delta_log: family.log_radius(),
        saturation,
    };
    EnstrolabStatus::Ok
}

/// Analytic worst-case ball-mass envelope of a Cantor family at radius r.
///
/// # Safety
/// `out` must point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_cantor_ball_mass(
    rule: i32,
    alpha: f64,
    n: u32,
    r: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    let rule = match rule {
        0 => CantorRule::Algebraic { alpha },
        1 => CantorRule::LogSparse,
        _ => return EnstrolabStatus::InvalidArgument,
    };
    let family = match cantor::build_family(rule, n) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    match family.ball_mass_worst_case(r) {
        Ok(v) => {
            *out = v;
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Opaque handle to a torus vorticity solver.
pub struct EnstrolabSolver {
    state: SolverState,
}

/// Fresh solver with the Taylor–Green datum cos x cos y.
#[no_mangle]
pub extern "C" fn enstrolab_solver_new_taylor_green(
    resolution: usize,
    nu: f64,
) -> *mut EnstrolabSolver {
    if !(8..=4096).contains(&resolution) {
        return std::ptr::null_mut();
    }
    let field = enstrolab::spectral2d::taylor_green(resolution);
    match SolverState::new(&field, nu, SolverConfig::default()) {
        Ok(state) => Box::into_raw(Box::new(EnstrolabSolver { state })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Fresh solver from row-major vorticity values on the 2π torus
/// (resolution² doubles). The mean is removed on ingestion.
///
/// # Safety
/// `values` must point to resolution² readable f64s.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_new_from_values(
    resolution: usize,
    nu: f64,
    values: *const f64,
) -> *mut EnstrolabSolver {
    if values.is_null() || !(8..=4096).contains(&resolution) {
        return std::ptr::null_mut();
    }
    let slice = std::slice::from_raw_parts(values, resolution * resolution);
    let field = match GridField::from_values(resolution, TORUS_SIDE, slice.to_vec()) {
        Ok(f) => f,
        Err(_) => return std::ptr::null_mut(),
    };
    match SolverState::new(&field, nu, SolverConfig::default()) {
        Ok(state) => Box::into_raw(Box::new(EnstrolabSolver { state })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// One time step; dt ≤ 0 lets the CFL policy choose.
///
/// # Safety
/// `handle` must be a live pointer from a solver constructor.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_step(
    handle: *mut EnstrolabSolver,
    dt: f64,
    dt_taken: *mut f64,
) -> EnstrolabStatus {
    let Some(solver) = handle.as_mut() else {
        return EnstrolabStatus::NullPointer;
    };
    let request = if dt > 0.0 { Some(dt) } else { None };
    match solver.state.step(request) {
        Ok(taken) => {
            if !dt_taken.is_null() {
                *dt_taken = taken;
            }
            EnstrolabStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Advance to the given time under the CFL policy.
///
/// # Safety
/// `handle` must be a live pointer from a solver constructor.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_advance(
    handle: *mut EnstrolabSolver,
    t_end: f64,
) -> EnstrolabStatus {
    let Some(solver) = handle.as_mut() else {
        return EnstrolabStatus::NullPointer;
    };
    match solver.state.run_to(t_end) {
        Ok(_) => EnstrolabStatus::Ok,
        Err(e) => status_of(&e),
    }
}

/// Spectral Parseval diagnostics of the current state.
#[repr(C)]
pub struct EnstrolabDiagnostics {
    pub time: f64,
    pub energy: f64,
    pub enstrophy: f64,
    pub palinstrophy: f64,
    pub h_minus_1: f64,
    pub sup_norm: f64,
}

/// # Safety
/// `handle` must be live; `out` must point to writable diagnostics.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_diagnostics(
    handle: *const EnstrolabSolver,
    out: *mut EnstrolabDiagnostics,
) -> EnstrolabStatus {
    let Some(solver) = handle.as_ref() else {
        return EnstrolabStatus::NullPointer;
    };
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    let d = solver.state.diagnostics(None);
    *out = EnstrolabDiagnostics {
        time: d.time,
        energy: d.energy,
        enstrophy: d.enstrophy,
        palinstrophy: d.palinstrophy,
        h_minus_1: d.h_minus_1,
        sup_norm: d.sup_norm,
    };
    EnstrolabStatus::Ok
}

/// Copy the current vorticity values (row-major, resolution² doubles).
///
/// # Safety
/// `handle` must be live; `buffer` must hold resolution² writable f64s.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_values(
    handle: *const EnstrolabSolver,
    buffer: *mut f64,
    len: usize,
) -> EnstrolabStatus {
    let Some(solver) = handle.as_ref() else {
        return EnstrolabStatus::NullPointer;
    };
    if buffer.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    let field = solver.state.field();
    let values = field.values();
    if len < values.len() {
        return EnstrolabStatus::InvalidArgument;
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len());
    EnstrolabStatus::Ok
}

/// # Safety
/// `handle` must come from a solver constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_solver_free(handle: *mut EnstrolabSolver) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Opaque handle to an envelope transform F, F⁻¹.
pub struct EnstrolabEnvelope {
    env: EnvelopeFn,
}

/// Rate-model selector: 0 quadratic, 1 algebraic (uses `alpha`), 2 the
/// log-corrected measure-class model. `c` scales Ψ.
#[no_mangle]
pub extern "C" fn enstrolab_envelope_new(
    kind: i32,
    alpha: f64,
    c: f64,
) -> *mut EnstrolabEnvelope {
    let kind = match kind {
        0 => PsiKind::Quadratic { c },
        1 => PsiKind::Algebraic { alpha, c },
        2 => PsiKind::Delort { c },
        _ => return std::ptr::null_mut(),
    };
    let psi = match bounds::make_psi(kind) {
        Ok(p) => p,
        Err(_) => return std::ptr::null_mut(),
    };
    match bounds::envelope(&psi) {
        Ok(env) => Box::into_raw(Box::new(EnstrolabEnvelope { env })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// F(w) = ∫_w^∞ dv/Ψ(v).
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_envelope_f(
    handle: *const EnstrolabEnvelope,
    w: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    let Some(e) = handle.as_ref() else {
        return EnstrolabStatus::NullPointer;
    };
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    if !(w > 0.0) {
        return EnstrolabStatus::InvalidArgument;
    }
    *out = e.env.f(w);
    EnstrolabStatus::Ok
}

/// F⁻¹(y): the enstrophy envelope at y = νt.
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_envelope_f_inv(
    handle: *const EnstrolabEnvelope,
    y: f64,
    out: *mut f64,
) -> EnstrolabStatus {
    let Some(e) = handle.as_ref() else {
        return EnstrolabStatus::NullPointer;
    };
    if out.is_null() {
        return EnstrolabStatus::NullPointer;
    }
    if !(y > 0.0) {
        return EnstrolabStatus::InvalidArgument;
    }
    *out = e.env.f_inv(y);
    EnstrolabStatus::Ok
}

/// # Safety
/// `handle` must come from `enstrolab_envelope_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn enstrolab_envelope_free(handle: *mut EnstrolabEnvelope) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}
