#ifndef INSTANTON_H
#define INSTANTON_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OiStatus {
  OI_STATUS_OK = 0,
  OI_STATUS_NULL_POINTER = 1,
  OI_STATUS_INVALID_UTF8 = 2,
  OI_STATUS_SCHEMA = 3,
  OI_STATUS_SHAPE = 4,
  OI_STATUS_RANK_MISMATCH = 5,
  OI_STATUS_DEGENERATE_LINE = 6,
  OI_STATUS_PRECONDITION = 7,
  OI_STATUS_INVALID_ARGUMENT = 8,
  OI_STATUS_INTERNAL = 9,
} OiStatus;

/**
 * A flattened form together with the bundle rank from its spec.
 */
typedef struct OiForm OiForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses spec JSON into a new form handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OiStatus oi_form_from_spec_json(const char *json, struct OiForm **out);

/**
 * Releases a form handle. Null is ignored.
 *
 * # Safety
 * `form` must come from [`oi_form_from_spec_json`] and not be freed twice.
 */
void oi_form_free(struct OiForm *form);

/**
 * # Safety
 * `form` must be a live handle and `out` a valid pointer.
 */
enum OiStatus oi_form_rank(const struct OiForm *form, size_t *out);

/**
 * Charge `c`, dimension `n` and the spec's bundle rank `r`. Any out-pointer may be null.
 *
 * # Safety
 * `form` must be a live handle.
 */
enum OiStatus oi_form_dims(const struct OiForm *form, size_t *c, size_t *n, size_t *r);

/**
 * Checks the three conditions and the prechecks with the spec's `r`.
 * `*passes` is set to 1 or 0; the full report is written as JSON to
 * `*json_out` when it is non-null.
 *
 * # Safety
 * `form` must be a live handle, `passes` a valid pointer.
 */
enum OiStatus oi_check_conditions(const struct OiForm *form,
                                  size_t samples,
                                  uint64_t seed,
                                  int32_t *passes,
                                  char **json_out);

/**
 * Splitting type on the line through integer points `p` and `q` of length
 * `len = n + 1`. `*trivial` is set to 1 for a trivial restriction, 0 for a
 * jumping line.
 *
 * # Safety
 * `p` and `q` must point to `len` readable values; `trivial` must be valid.
 */
enum OiStatus oi_splitting_type(const struct OiForm *form,
                                const int64_t *p,
                                const int64_t *q,
                                size_t len,
                                int32_t *trivial,
                                char **json_out);

/**
 * Classifies `samples` seeded random lines with coordinates in `[-bound, bound]`.
 *
 * # Safety
 * `form` must be a live handle; `trivial` and `jumping` may be null.
 */
enum OiStatus oi_scan_lines(const struct OiForm *form,
                            size_t samples,
                            uint64_t seed,
                            int64_t bound,
                            size_t *trivial,
                            size_t *jumping,
                            char **json_out);

/**
 * Cohomology table for `kmin <= k <= kmax` as JSON in `*json_out`.
 *
 * # Safety
 * `form` must be a live handle and `json_out` a valid pointer.
 */
enum OiStatus oi_cohomology_table(const struct OiForm *form,
                                  int64_t kmin,
                                  int64_t kmax,
                                  char **json_out);

/**
 * # Safety
 * `dim` must be a valid pointer.
 */
enum OiStatus oi_moduli_dim(size_t c, size_t n, int64_t *dim);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void oi_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *oi_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INSTANTON_H */
