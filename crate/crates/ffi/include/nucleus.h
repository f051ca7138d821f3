#ifndef NUCLEUS_H
#define NUCLEUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NucleusStatus {
  NUCLEUS_STATUS_OK = 0,
  NUCLEUS_STATUS_NULL_POINTER = 1,
  NUCLEUS_STATUS_INVALID_ARGUMENT = 2,
  NUCLEUS_STATUS_NOT_PRIME = 3,
  NUCLEUS_STATUS_OUT_OF_RANGE = 4,
  NUCLEUS_STATUS_HYPOTHESIS_VIOLATED = 5,
  NUCLEUS_STATUS_FIELD_MISMATCH = 6,
  NUCLEUS_STATUS_BUFFER_TOO_SMALL = 7,
  NUCLEUS_STATUS_PANIC = 8,
} NucleusStatus;

typedef enum NucleusEmptyCase {
  NUCLEUS_EMPTY_CASE_TRIVIAL_PARAMS = 0,
  NUCLEUS_EMPTY_CASE_SMALL_T = 1,
  NUCLEUS_EMPTY_CASE_CURVE_SPECIAL = 2,
  NUCLEUS_EMPTY_CASE_NON_EMPTY = 3,
} NucleusEmptyCase;

/**
 * Opaque finite field handle.
 */
typedef struct NucleusField NucleusField;

/**
 * Opaque subspace handle, stored as its reduced echelon basis.
 */
typedef struct NucleusSubspace NucleusSubspace;

/**
 * Brute-force nucleus against the digit formula; see `nucleus_verify`.
 */
typedef struct NucleusReport {
  uint32_t p;
  uint32_t k;
  uint32_t q;
  size_t m;
  uint32_t t;
  int64_t predicted_dim;
  int64_t bruteforce_dim;
  bool basis_match;
  bool small_field;
  bool consistent;
} NucleusReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *nucleus_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nucleus_string_free(char *s);

/**
 * GF(p^k). `modulus` holds k+1 coefficients, constant term first, or is null for
 * the default irreducible.
 *
 * # Safety
 * `modulus` must point to `modulus_len` readable values (or be null with length 0);
 * `out` must be writable.
 */
enum NucleusStatus nucleus_field_new(uint32_t p,
                                     uint32_t k,
                                     const uint32_t *modulus,
                                     size_t modulus_len,
                                     struct NucleusField **out);

/**
 * Field from a spec string: `"p"`, `"p^k"` or `"p^k/c0,...,ck"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string; `out` must be writable.
 */
enum NucleusStatus nucleus_field_parse(const char *spec, struct NucleusField **out);

/**
 * # Safety
 * `field` must come from this library and not have been freed; null is ignored.
 */
void nucleus_field_free(struct NucleusField *field);

/**
 * Order q of the field, or 0 for a null handle.
 *
 * # Safety
 * `field` must be a live handle or null.
 */
uint32_t nucleus_field_order(const struct NucleusField *field);

/**
 * Projective dimension of the nucleus from the digit formula (-1 when empty).
 *
 * # Safety
 * `out` must be writable.
 */
enum NucleusStatus nucleus_dim_formula(size_t m, uint32_t t, uint32_t p, int64_t *out);

/**
 * Number of exponent tuples whose multinomial is nonzero mod p.
 *
 * # Safety
 * `out` must be writable.
 */
enum NucleusStatus nucleus_count_nonvanishing(size_t m, uint32_t t, uint32_t p, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum NucleusStatus nucleus_classify(size_t m, uint32_t t, uint32_t p, enum NucleusEmptyCase *out);

/**
 * Multinomial `(t; e_0, ..., e_m)` mod p; 0 if the exponents do not sum to t.
 *
 * # Safety
 * `e` must point to `len` readable values; `out` must be writable.
 */
enum NucleusStatus nucleus_multinomial_mod_p(uint32_t t,
                                             const uint32_t *e,
                                             size_t len,
                                             uint32_t p,
                                             uint32_t *out);

/**
 * Whether adding the exponents in base p produces no carry.
 *
 * # Safety
 * `e` must point to `len` readable values; `out` must be writable.
 */
enum NucleusStatus nucleus_carry_free(uint32_t t,
                                      const uint32_t *e,
                                      size_t len,
                                      uint32_t p,
                                      bool *out);

/**
 * Nucleus computed by brute force over every osculating hyperplane.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_bruteforce(const struct NucleusField *field,
                                      size_t m,
                                      uint32_t t,
                                      struct NucleusSubspace **out);

/**
 * Nucleus predicted by the digit formula: span of the base points whose
 * multinomial vanishes mod p.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_predicted(const struct NucleusField *field,
                                     size_t m,
                                     uint32_t t,
                                     struct NucleusSubspace **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void nucleus_subspace_free(struct NucleusSubspace *s);

/**
 * Vector dimension.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_subspace_dim(const struct NucleusSubspace *s, size_t *out);

/**
 * Dimension of the ambient coordinate space, C(m+t, t).
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_subspace_ambient_dim(const struct NucleusSubspace *s, size_t *out);

/**
 * Copies basis row `row` (element codes) into `buf`, which must hold at least the
 * ambient dimension.
 *
 * # Safety
 * `s` must be a live handle; `buf` must be writable for `len` values.
 */
enum NucleusStatus nucleus_subspace_basis_row(const struct NucleusSubspace *s,
                                              size_t row,
                                              uint32_t *buf,
                                              size_t len);

/**
 * Writes 1 to `out` if the two subspaces are equal, 0 otherwise.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum NucleusStatus nucleus_subspace_equal(const struct NucleusSubspace *a,
                                          const struct NucleusSubspace *b,
                                          bool *out);

/**
 * Compares the brute-force nucleus with the digit formula.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_verify(const struct NucleusField *field,
                                  size_t m,
                                  uint32_t t,
                                  struct NucleusReport *out);

/**
 * As `nucleus_verify`, rendered as a JSON report document (schema version "1").
 * Free the result with `nucleus_string_free`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum NucleusStatus nucleus_verify_json(const struct NucleusField *field,
                                       size_t m,
                                       uint32_t t,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUCLEUS_H */
