#ifndef ESFEM_H
#define ESFEM_H

/* Generated by cbindgen from the esfem-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit codes.
 */
typedef enum {
  ESFEM_STATUS_OK = 0,
  /**
   * Any failure not covered by a more specific code.
   */
  ESFEM_STATUS_ERROR = 1,
  /**
   * The linear solver did not reach its tolerance.
   */
  ESFEM_STATUS_SOLVER_DIVERGED = 2,
  /**
   * Malformed or inconsistent run configuration.
   */
  ESFEM_STATUS_INVALID_CONFIG = 3,
  /**
   * A required pointer argument was null.
   */
  ESFEM_STATUS_NULL_POINTER = 4,
} EsfemStatus;

/**
 * Opaque run configuration.
 */
typedef struct EsfemConfig EsfemConfig;

/**
 * Opaque convergence table.
 */
typedef struct EsfemReport EsfemReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buffer` (truncated,
 * always NUL-terminated when `capacity > 0`) and return the full message
 * length in bytes, excluding the terminator.
 */
size_t esfem_last_error(char *buffer, size_t capacity);

/**
 * Library version as a static NUL-terminated string.
 */
const char *esfem_version(void);

/**
 * Parse a JSON run configuration. Returns null on failure (see
 * [`esfem_last_error`]).
 */
EsfemConfig *esfem_config_parse(const char *json);

void esfem_config_free(EsfemConfig *config);

/**
 * Run the experiment described by the config, writing its output files;
 * the human-readable summary is discarded.
 */
EsfemStatus esfem_run(const EsfemConfig *config);

/**
 * Run the convergence study (example 1) and hand back the table.
 */
EsfemStatus esfem_run_convergence(const EsfemConfig *config, EsfemReport **out_report);

/**
 * Number of refinement levels in the table.
 */
size_t esfem_report_len(const EsfemReport *report);

/**
 * Fetch one table row. EOC entries are NaN on the coarsest row.
 */
EsfemStatus esfem_report_row(const EsfemReport *report,
                             size_t index,
                             double *out_h,
                             double *out_linf_l2,
                             double *out_eoc_linf_l2,
                             double *out_l2_h1,
                             double *out_eoc_l2_h1);

void esfem_report_free(EsfemReport *report);

/**
 * Experimental order of convergence between two refinement levels.
 */
EsfemStatus esfem_eoc(double e_coarse,
                      double e_fine,
                      double h_coarse,
                      double h_fine,
                      double *out_value);

/**
 * Run the verification suite, writing diagnostics.csv into `output_dir`.
 * Returns `ESFEM_STATUS_OK` only if every check passed.
 */
EsfemStatus esfem_verify(const char *output_dir);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ESFEM_H */
