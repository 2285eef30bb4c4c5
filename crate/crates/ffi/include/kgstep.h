#ifndef KGSTEP_H
#define KGSTEP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. 2, 3 and 4 match the command-line exit codes.
 */
typedef enum KgStatus {
  KG_STATUS_OK = 0,
  KG_STATUS_NULL_POINTER = 1,
  KG_STATUS_INVALID_INPUT = 2,
  KG_STATUS_SINGULAR = 3,
  KG_STATUS_ORACLE_FAILURE = 4,
  KG_STATUS_OUT_OF_RANGE = 5,
} KgStatus;

typedef enum KgRegime {
  KG_REGIME_A = 0,
  KG_REGIME_B = 1,
  KG_REGIME_C = 2,
  KG_REGIME_BOUNDARY = 3,
} KgRegime;

typedef enum KgBoundary {
  KG_BOUNDARY_NONE = 0,
  KG_BOUNDARY_REST_THRESHOLD = 1,
  KG_BOUNDARY_PAIR_THRESHOLD = 2,
} KgBoundary;

typedef enum KgKappaKind {
  KG_KAPPA_KIND_PROPAGATING = 0,
  KG_KAPPA_KIND_EVANESCENT = 1,
  KG_KAPPA_KIND_ZERO = 2,
} KgKappaKind;

/**
 * Oracle convergence table.
 */
typedef struct KgConvergence KgConvergence;

/**
 * Sampled stationary profile.
 */
typedef struct KgProfile KgProfile;

/**
 * A threshold; `value` is meaningful only when `infinite` is false.
 */
typedef struct KgThreshold {
  double value;
  bool infinite;
} KgThreshold;

typedef struct KgRegimeReport {
  enum KgRegime regime;
  struct KgThreshold v_c;
  struct KgThreshold v_m;
  enum KgBoundary boundary_detail;
} KgRegimeReport;

typedef struct KgComplex {
  double re;
  double im;
} KgComplex;

typedef struct KgScattering {
  enum KgRegime regime;
  double k;
  double kappa_sq;
  double kappa;
  enum KgKappaKind kappa_kind;
  struct KgComplex ratio_reflect;
  struct KgComplex ratio_transmit_particle;
  struct KgComplex ratio_transmit_anti;
  double reflection;
  double transmission;
  double v_g_left;
  double v_g_right;
} KgScattering;

typedef struct KgLocalization {
  double delta_x;
  double delta_x_min;
  double m_eff;
  double lambda_eff;
  double delta_p_max;
} KgLocalization;

typedef struct KgProfileSample {
  double x;
  double rho;
  double current;
  double mod_phi_sq;
} KgProfileSample;

typedef struct KgConvergenceRow {
  double width;
  double r_numeric;
  double r_closed;
  double abs_error;
  double current_drift;
  bool converged;
} KgConvergenceRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *kg_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *kg_last_error_message(void);

/**
 * Regime and thresholds for (ε, u, g_t).
 */
enum KgStatus kg_classify(double energy, double v0, double g_t, struct KgRegimeReport *out);

/**
 * Amplitude ratios, R, T and group velocities. Boundary inputs and the
 * regime-C pole return `KG_STATUS_SINGULAR`.
 */
enum KgStatus kg_scatter(double energy, double v0, double g_t, struct KgScattering *out);

/**
 * Decay length and effective Compton wavelength; regime B only.
 */
enum KgStatus kg_localization(double energy, double v0, double g_t, struct KgLocalization *out);

/**
 * Samples ρ, J and |φ|² at `samples` evenly spaced points of [xmin, xmax].
 * On success `*out` owns a handle to release with [`kg_profile_free`].
 */
enum KgStatus kg_profile_new(double energy,
                             double v0,
                             double g_t,
                             double xmin,
                             double xmax,
                             size_t samples,
                             struct KgProfile **out);

size_t kg_profile_len(const struct KgProfile *profile);

enum KgStatus kg_profile_sample(const struct KgProfile *profile,
                                size_t index,
                                struct KgProfileSample *out);

void kg_profile_free(struct KgProfile *profile);

/**
 * Runs the logistic-step oracle for each of `n_widths` strictly decreasing
 * widths. A non-positive `domain_half_width` or zero `steps` selects the
 * automatic grid.
 */
enum KgStatus kg_oracle_compare(double energy,
                                double v0,
                                double g_t,
                                const double *widths,
                                size_t n_widths,
                                double domain_half_width,
                                size_t steps,
                                struct KgConvergence **out);

size_t kg_convergence_len(const struct KgConvergence *table);

/**
 * True when the error is non-increasing over the last three widths, the final
 * error meets the tolerance and every run conserved the current.
 */
bool kg_convergence_ok(const struct KgConvergence *table);

enum KgStatus kg_convergence_row(const struct KgConvergence *table,
                                 size_t index,
                                 struct KgConvergenceRow *out);

void kg_convergence_free(struct KgConvergence *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KGSTEP_H */
