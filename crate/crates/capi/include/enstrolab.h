#ifndef ENSTROLAB_H
#define ENSTROLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  EnstrolabStatus_Ok = 0,
  EnstrolabStatus_NullPointer = 1,
  EnstrolabStatus_InvalidArgument = 2,
  EnstrolabStatus_NumericalFailure = 3,
  EnstrolabStatus_GeometryViolation = 4,
  EnstrolabStatus_ResolutionError = 5,
  EnstrolabStatus_CflViolation = 6,
} EnstrolabStatus;

/**
 * Budget kinds for `enstrolab_dissipation_budget`.
 */
typedef enum {
  /**
   * (νT)^{α/2}; `param` is α ∈ (0,2).
   */
  EnstrolabBudgetKind_Algebraic = 0,
  /**
   * log(T/δ)/√|log(νT)|; `param` unused.
   */
  EnstrolabBudgetKind_Delort = 1,
  /**
   * (νT)^{2(p-1)/p}; `param` is p > 1.
   */
  EnstrolabBudgetKind_Lp = 2,
} EnstrolabBudgetKind;

/**
 * Opaque handle to an envelope transform F, F⁻¹.
 */
typedef struct EnstrolabEnvelope EnstrolabEnvelope;

/**
 * Opaque handle to a torus vorticity solver.
 */
typedef struct EnstrolabSolver EnstrolabSolver;

/**
 * Closed-form norms and saturation ratio of a Cantor family member.
 */
typedef struct {
  double l1;
  double l2_sq_log;
  double h1_sq_log;
  double delta_log;
  double saturation;
} EnstrolabCantorNorms;

/**
 * Spectral Parseval diagnostics of the current state.
 */
typedef struct {
  double time;
  double energy;
  double enstrophy;
  double palinstrophy;
  double h_minus_1;
  double sup_norm;
} EnstrolabDiagnostics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Bessel function of the first kind, order zero.
 */
double enstrolab_bessel_j0(double x);

/**
 * Bessel function of the first kind, order one.
 */
double enstrolab_bessel_j1(double x);

/**
 * Enstrophy of the heat-evolved circle measure at s = νt.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
EnstrolabStatus enstrolab_circle_enstrophy(double s, double *out);

/**
 * ‖ω^ν(t)‖² for the integrable log-decay datum (νt ∈ (0,1)).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
EnstrolabStatus enstrolab_logdatum_enstrophy(double nu, double t, double *out);

/**
 * ‖μ^ν(t)‖² of the rescaled compact bump via the exact scaling identity.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
EnstrolabStatus enstrolab_rescaled_bump_enstrophy(double nu, double t, double *out);

/**
 * Dissipation budget with unit constant; requires νT < 1.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
EnstrolabStatus enstrolab_dissipation_budget(EnstrolabBudgetKind kind,
                                             double param,
                                             double nu,
                                             double delta,
                                             double t_end,
                                             double *out);

/**
 * Cantor rule selector: 0 = algebraic (uses `alpha`), 1 = log-sparse.
 *
 * # Safety
 * `out` must point to a writable EnstrolabCantorNorms.
 */
EnstrolabStatus enstrolab_cantor_norms(int32_t rule,
                                       double alpha,
                                       uint32_t n,
                                       EnstrolabCantorNorms *out);

/**
 * Analytic worst-case ball-mass envelope of a Cantor family at radius r.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
EnstrolabStatus enstrolab_cantor_ball_mass(int32_t rule,
                                           double alpha,
                                           uint32_t n,
                                           double r,
                                           double *out);

/**
 * Fresh solver with the Taylor–Green datum cos x cos y.
 */
EnstrolabSolver *enstrolab_solver_new_taylor_green(uintptr_t resolution, double nu);

/**
 * Fresh solver from row-major vorticity values on the 2π torus
 * (resolution² doubles). The mean is removed on ingestion.
 *
 * # Safety
 * `values` must point to resolution² readable f64s.
 */
EnstrolabSolver *enstrolab_solver_new_from_values(uintptr_t resolution,
                                                  double nu,
                                                  const double *values);

/**
 * One time step; dt ≤ 0 lets the CFL policy choose.
 *
 * # Safety
 * `handle` must be a live pointer from a solver constructor.
 */
EnstrolabStatus enstrolab_solver_step(EnstrolabSolver *handle, double dt, double *dt_taken);

/**
 * Advance to the given time under the CFL policy.
 *
 * # Safety
 * `handle` must be a live pointer from a solver constructor.
 */
EnstrolabStatus enstrolab_solver_advance(EnstrolabSolver *handle, double t_end);

/**
 * # Safety
 * `handle` must be live; `out` must point to writable diagnostics.
 */
EnstrolabStatus enstrolab_solver_diagnostics(const EnstrolabSolver *handle,
                                             EnstrolabDiagnostics *out);

/**
 * Copy the current vorticity values (row-major, resolution² doubles).
 *
 * # Safety
 * `handle` must be live; `buffer` must hold resolution² writable f64s.
 */
EnstrolabStatus enstrolab_solver_values(const EnstrolabSolver *handle,
                                        double *buffer,
                                        uintptr_t len);

/**
 * # Safety
 * `handle` must come from a solver constructor and not be freed twice.
 */
void enstrolab_solver_free(EnstrolabSolver *handle);

/**
 * Rate-model selector: 0 quadratic, 1 algebraic (uses `alpha`), 2 the
 * log-corrected measure-class model. `c` scales Ψ.
 */
EnstrolabEnvelope *enstrolab_envelope_new(int32_t kind, double alpha, double c);

/**
 * F(w) = ∫_w^∞ dv/Ψ(v).
 *
 * # Safety
 * `handle` must be live; `out` writable.
 */
EnstrolabStatus enstrolab_envelope_f(const EnstrolabEnvelope *handle, double w, double *out);

/**
 * F⁻¹(y): the enstrophy envelope at y = νt.
 *
 * # Safety
 * `handle` must be live; `out` writable.
 */
EnstrolabStatus enstrolab_envelope_f_inv(const EnstrolabEnvelope *handle, double y, double *out);

/**
 * # Safety
 * `handle` must come from `enstrolab_envelope_new` and not be freed twice.
 */
void enstrolab_envelope_free(EnstrolabEnvelope *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENSTROLAB_H */
