#ifndef TRICOOL_H
#define TRICOOL_H

/* Generated by cbindgen from tricool-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TricoolStatus {
  TRICOOL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TRICOOL_STATUS_NULL_ARGUMENT = 1,
  /**
   * The configuration text or a scenario parameter is invalid.
   */
  TRICOOL_STATUS_INVALID_CONFIG = 2,
  /**
   * The request is well-formed but has no answer in this regime
   * (empty cooling window, no root, non-convergence).
   */
  TRICOOL_STATUS_DOMAIN_ERROR = 3,
  /**
   * File-system failure while reading a configuration file.
   */
  TRICOOL_STATUS_IO_ERROR = 4,
  /**
   * The configuration text was not valid UTF-8.
   */
  TRICOOL_STATUS_INVALID_UTF8 = 5,
  /**
   * Unexpected internal failure.
   */
  TRICOOL_STATUS_INTERNAL_ERROR = 6,
} TricoolStatus;

/**
 * Opaque validated scenario handle.
 */
typedef struct TricoolScenario TricoolScenario;

/**
 * Stationary state: populations and the driven coherence.
 */
typedef struct TricoolSteadyState {
  double p11;
  double p22;
  double p33;
  double p32_re;
  double p32_im;
} TricoolSteadyState;

/**
 * Cycle-averaged thermodynamics. The COP fields are meaningful only when
 * the matching `has_*` flag is set.
 */
typedef struct TricoolThermoReport {
  double wdot;
  double qdot_h;
  double qdot_c;
  double qdot_e;
  double entropy_rate;
  double first_law_residual;
  bool has_cop_work;
  double cop_work;
  bool has_cop_absorption;
  double cop_absorption;
} TricoolThermoReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buffer` (NUL-terminated,
 * truncating to `capacity`). Returns the full length of the message
 * including the NUL terminator; call with a null buffer to query the size.
 *
 * # Safety
 * `buffer` must be null or point to at least `capacity` writable bytes.
 */
size_t tricool_last_error_message(char *buffer, size_t capacity);

/**
 * Parse configuration text (see the config-file format in the project
 * README) into a new scenario handle. The caller owns the handle and must
 * release it with [`tricool_scenario_free`].
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum TricoolStatus tricool_scenario_parse(const char *text, struct TricoolScenario **out);

/**
 * Parse a configuration file into a new scenario handle.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum TricoolStatus tricool_scenario_from_file(const char *path, struct TricoolScenario **out);

/**
 * Release a scenario handle. Null is ignored.
 *
 * # Safety
 * `scenario` must be a handle obtained from this library, not yet freed.
 */
void tricool_scenario_free(struct TricoolScenario *scenario);

/**
 * Update one scenario parameter in place, revalidating the scenario.
 * Accepted keys: `delta21`, `epsilon`, `t_c`, `t_e`, `lambda_e`.
 *
 * # Safety
 * `scenario` must be a live handle; `key` a NUL-terminated string.
 */
enum TricoolStatus tricool_scenario_set(struct TricoolScenario *scenario,
                                        const char *key,
                                        double value);

/**
 * Write the canonical configuration text of the scenario into `buffer`
 * (NUL-terminated, truncating). Returns the status; the full length
 * including the NUL terminator is stored in `*length`.
 *
 * # Safety
 * Pointers must be valid; `buffer` may be null to query the size.
 */
enum TricoolStatus tricool_scenario_config(const struct TricoolScenario *scenario,
                                           char *buffer,
                                           size_t capacity,
                                           size_t *length);

/**
 * Stationary state of the scenario.
 *
 * # Safety
 * `scenario` must be a live handle; `out` a valid pointer.
 */
enum TricoolStatus tricool_steady_state(const struct TricoolScenario *scenario,
                                        struct TricoolSteadyState *out);

/**
 * Full thermodynamic report of the scenario.
 *
 * # Safety
 * `scenario` must be a live handle; `out` a valid pointer.
 */
enum TricoolStatus tricool_thermo_report(const struct TricoolScenario *scenario,
                                         struct TricoolThermoReport *out);

/**
 * Locate the cooling window over delta21. `*nonempty` reports whether any
 * cooling occurs; `*delta21_max` is zero for an empty window.
 *
 * # Safety
 * `scenario` must be a live handle; out-pointers must be valid.
 */
enum TricoolStatus tricool_cooling_window(const struct TricoolScenario *scenario,
                                          double *delta21_max,
                                          bool *nonempty);

/**
 * Minimum drive coupling for cooling at the scenario's delta21. The
 * closed-form estimate is reported alongside the numeric root when its
 * radicand is non-negative.
 *
 * # Safety
 * `scenario` must be a live handle; out-pointers must be valid.
 */
enum TricoolStatus tricool_epsilon_min(const struct TricoolScenario *scenario,
                                       double *numeric,
                                       double *formula,
                                       bool *has_formula);

/**
 * Maximize the cooling rate over delta21 inside the cooling window.
 *
 * # Safety
 * `scenario` must be a live handle; out-pointers must be valid.
 */
enum TricoolStatus tricool_maximize_cooling_rate(const struct TricoolScenario *scenario,
                                                 double *delta21_star,
                                                 double *qdot_c_max);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRICOOL_H */
