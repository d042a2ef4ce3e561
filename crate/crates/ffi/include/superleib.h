#ifndef SUPERLEIB_H
#define SUPERLEIB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_PARSE_ERROR = 3,
  SL_STATUS_FAMILY_ERROR = 4,
  SL_STATUS_NOT_NILPOTENT = 5,
  SL_STATUS_UNDEFINED = 6,
  SL_STATUS_SEARCH_ERROR = 7,
  SL_STATUS_PANIC = 8,
  SL_STATUS_OTHER_ERROR = 9,
} SlStatus;

// Opaque algebra handle.
typedef struct SlAlgebra SlAlgebra;

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *sl_last_error(void);

// Parses `.lsa` text into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum SlStatus sl_algebra_parse(const char *text, struct SlAlgebra **out);

// Builds a family member. `params_csv` may be null for all-zero parameters.
//
// # Safety
// `tag` must be a NUL-terminated string, `params_csv` null or one, and `out`
// a valid pointer.
enum SlStatus sl_family_build(const char *tag,
                              size_t n,
                              size_t m,
                              const char *params_csv,
                              struct SlAlgebra **out);

// Releases a handle; null is ignored.
//
// # Safety
// `a` must be null or a handle from this library not yet freed.
void sl_algebra_free(struct SlAlgebra *a);

// # Safety
// `a` must be a live handle; `n` and `m` valid pointers.
enum SlStatus sl_algebra_dims(const struct SlAlgebra *a, size_t *n, size_t *m);

// Number of basis triples violating the superidentity.
//
// # Safety
// `a` must be a live handle; `out` a valid pointer.
enum SlStatus sl_algebra_violation_count(const struct SlAlgebra *a, size_t *out);

// # Safety
// `a` must be a live handle; `out` a valid pointer.
enum SlStatus sl_algebra_nilindex(const struct SlAlgebra *a, size_t *out);

// Canonical `.lsa` text.
//
// # Safety
// `a` must be a live handle; `out` a valid pointer.
enum SlStatus sl_algebra_serialize(const struct SlAlgebra *a, char **out);

// Canonical fingerprint line with the default candidate policy.
//
// # Safety
// `a` must be a live handle; `out` a valid pointer.
enum SlStatus sl_algebra_fingerprint(const struct SlAlgebra *a, char **out);

// Characteristic sequence as text, e.g. `(4,1|4)`.
//
// # Safety
// `a` must be a live handle; `out` a valid pointer.
enum SlStatus sl_algebra_charseq(const struct SlAlgebra *a,
                                 size_t trials,
                                 uint64_t seed,
                                 char **out);

// Census report JSON for a full search over `coeffs_csv`.
//
// # Safety
// `coeffs_csv` must be a NUL-terminated string; `out` a valid pointer.
enum SlStatus sl_census_json(size_t n, size_t m, const char *coeffs_csv, size_t jobs, char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void sl_string_free(char *s);

#endif  /* SUPERLEIB_H */
