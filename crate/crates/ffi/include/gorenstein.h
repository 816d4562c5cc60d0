#ifndef GORENSTEIN_H
#define GORENSTEIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2..=6 match the command-line exit codes.
 */
typedef enum {
  GOR_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  GOR_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed input, or any other rejected input.
   */
  GOR_STATUS_PARSE = 2,
  GOR_STATUS_INFINITE_DIMENSIONAL = 3,
  GOR_STATUS_NOT_LOCAL = 4,
  GOR_STATUS_NOT_GORENSTEIN = 5,
  GOR_STATUS_NOT_A_COMPLEMENT = 6,
  GOR_STATUS_PANIC = 99,
} GorStatus;

/**
 * Outcome of [`gor_isocheck`].
 */
typedef enum {
  GOR_VERDICT_ISOMORPHIC = 0,
  GOR_VERDICT_NOT_ISOMORPHIC = 1,
  GOR_VERDICT_UNKNOWN = 7,
} GorVerdict;

/**
 * Opaque algebra handle.
 */
typedef struct GorAlgebra GorAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an algebra from algebra-file text (`vars = ...`, `gens = ...`).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
GorStatus gor_algebra_new(const char *text, GorAlgebra **out);

/**
 * Releases a handle from [`gor_algebra_new`]. Null is ignored.
 *
 * # Safety
 * `a` must come from [`gor_algebra_new`] and not be freed twice.
 */
void gor_algebra_free(GorAlgebra *a);

/**
 * Writes the vector-space dimension of the algebra.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
GorStatus gor_algebra_dimension(const GorAlgebra *a, size_t *out);

/**
 * Structure report as a JSON object (dimension, locality, Gorenstein flag,
 * nil-index, embedding dimension, filtration, socle generator, grading).
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
GorStatus gor_algebra_structure_json(const GorAlgebra *a, char **out);

/**
 * Nil-polynomial of the default projection, in variables `a1..an`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
GorStatus gor_nil_polynomial(GorAlgebra *a, char **out);

/**
 * Extracts an inverse system from the nil-polynomial using the default
 * complement and verifies it. `q` receives the polynomial (may be null if
 * not wanted), `verified` the verdict.
 *
 * # Safety
 * `a` must be a live handle; `verified` a valid pointer; `q` null or valid.
 */
GorStatus gor_inverse_system(GorAlgebra *a, char **q, bool *verified);

/**
 * Checks whether `g` (in the algebra's variables) is an inverse system.
 *
 * # Safety
 * `a` must be a live handle, `g` a nul-terminated string, `out` valid.
 */
GorStatus gor_verify_inverse_system(const GorAlgebra *a, const char *g, bool *out);

/**
 * Decides whether two Gorenstein algebras are isomorphic.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
GorStatus gor_isocheck(GorAlgebra *a, GorAlgebra *b, GorVerdict *out);

/**
 * Message for the last failure on this thread, or null. Free with
 * [`gor_string_free`].
 */
char *gor_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void gor_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GORENSTEIN_H */
