#ifndef WPL_H
#define WPL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum WplStatus {
  WPL_STATUS_OK = 0,
  WPL_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input: parse errors, bad indices, bad UTF-8.
   */
  WPL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Well-formed but mathematically invalid input.
   */
  WPL_STATUS_SEMANTIC_ERROR = 3,
  /**
   * A computation could not certify its result.
   */
  WPL_STATUS_CERTIFICATE_FAILURE = 4,
  /**
   * An internal panic was caught.
   */
  WPL_STATUS_PANIC = 5,
} WplStatus;

/**
 * Opaque handle to a weighted projective line.
 */
typedef struct WplHandle WplHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a handle for `weights[0..n_weights]` with point parameters
 * `lambda_num[k] / lambda_den[k]` for `k < n_lambda` (the lambda arrays may be
 * null when `n_lambda` is 0).
 *
 * # Safety
 * The arrays must be valid for the given lengths and `out` must be writable.
 */
enum WplStatus wpl_new(const int64_t *weights,
                       size_t n_weights,
                       const int64_t *lambda_num,
                       const int64_t *lambda_den,
                       size_t n_lambda,
                       struct WplHandle **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from `wpl_new` and not be used afterwards.
 */
void wpl_free(struct WplHandle *handle);

/**
 * Number of vertices `N` of the canonical algebra's quiver.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum WplStatus wpl_vertex_count(const struct WplHandle *handle, size_t *out);

/**
 * `dim H^0` of the degree given by the expression `degree`, e.g. `"3c-2x1"`.
 *
 * # Safety
 * `handle` must be live, `degree` a NUL-terminated string and `out` writable.
 */
enum WplStatus wpl_h0_dim(const struct WplHandle *handle, const char *degree, uint64_t *out);

/**
 * Classification as JSON: `{"class", "euler_char", "delta_omega", "pbar", "vertices"}`.
 *
 * # Safety
 * `handle` must be live and `out` writable.
 */
enum WplStatus wpl_classify_json(const struct WplHandle *handle, char **out);

/**
 * The quiver of the canonical bundle up to `t`-degree `k_max`, in the JSON
 * schema of the command line. Returns `CertificateFailure` (with the JSON
 * still written) when the arrows do not generate the algebra.
 *
 * # Safety
 * `handle` must be live and `out` writable.
 */
enum WplStatus wpl_kquiver_json(const struct WplHandle *handle, uint32_t k_max, char **out);

/**
 * Acyclicity verdict of the pulled-back bundle as JSON.
 *
 * # Safety
 * `handle` must be live and `out` writable.
 */
enum WplStatus wpl_tilting_json(const struct WplHandle *handle, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void wpl_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *wpl_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WPL_H */
