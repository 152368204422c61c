#ifndef WARING_H
#define WARING_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WaringAhTag {
  WARING_AH_TAG_EXPECTED_EFFECTIVE = 0,
  WARING_AH_TAG_EXPECTED_EMPTY = 1,
  WARING_AH_TAG_EXCEPTIONAL = 2,
  WARING_AH_TAG_OUT_OF_RANGE = 3,
} WaringAhTag;

typedef enum WaringFcCase {
  WARING_FC_CASE_NONE = 0,
  WARING_FC_CASE_L0 = 1,
  WARING_FC_CASE_L1 = 2,
  WARING_FC_CASE_L2 = 3,
} WaringFcCase;

/**
 * Singularities of a random member at and away from its imposed points.
 */
typedef enum WaringSing {
  WARING_SING_NODES = 0,
  WARING_SING_CURVE = 1,
  WARING_SING_SQUARE = 2,
  WARING_SING_DEGENERATE = 3,
} WaringSing;

typedef enum WaringStatus {
  WARING_STATUS_OK = 0,
  WARING_STATUS_NULL_POINTER = 1,
  WARING_STATUS_INVALID_ARGUMENT = 2,
  WARING_STATUS_OVERFLOW = 3,
  WARING_STATUS_COMPUTATION = 4,
  WARING_STATUS_PANIC = 5,
} WaringStatus;

typedef enum WaringUniqueness {
  WARING_UNIQUENESS_UNIQUE = 0,
  WARING_UNIQUENESS_NOT_UNIQUE = 1,
  WARING_UNIQUENESS_NO_CANONICAL_FORM = 2,
  WARING_UNIQUENESS_OUT_OF_RANGE = 3,
} WaringUniqueness;

/**
 * A sampled double-point system: a spec plus one random point configuration.
 */
typedef struct WaringSystem WaringSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *waring_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *waring_last_error(void);

/**
 * `C(n+d,n) - (n+1)l - 1`.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_expected_dim(uint32_t d, uint32_t n, uint32_t l, int64_t *dim);

/**
 * Predicted dimension of `G(d,n,l)` with its classification.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_ah_status(uint32_t d,
                                   uint32_t n,
                                   uint32_t l,
                                   enum WaringAhTag *tag,
                                   int64_t *dim);

/**
 * Fractional part `num/den` with `den = a + 1`.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_frup(uint32_t a, uint32_t b, uint64_t *num, uint64_t *den);

/**
 * The pair `(l, h)` used for the degree-`d` step in `P^n`.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_lh_params(uint32_t d, uint32_t n, int64_t *l, int64_t *h);

/**
 * Slack `delta(d,n)` of the degree-`d` step.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_delta(uint32_t d, uint32_t n, int64_t *value);

/**
 * Which of the three `l` cases of the degree-`2D` construction applies.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_fc_case(uint32_t big_d, uint32_t n, uint32_t l, enum WaringFcCase *case_);

/**
 * Uniqueness verdict; `k` is written only when `has_k` comes back true.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_uniqueness(uint32_t d,
                                    uint32_t n,
                                    enum WaringUniqueness *verdict,
                                    bool *has_k,
                                    int64_t *k);

/**
 * Samples `H(d,n,l,h)` (`h = 0` for `G(d,n,l)`) and stores a handle in `system`.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_system_new(uint32_t d,
                                    uint32_t n,
                                    uint32_t l,
                                    uint32_t h,
                                    uint64_t prime,
                                    uint64_t seed,
                                    struct WaringSystem **system);

/**
 * Releases a handle from [`waring_system_new`]. Null is ignored.
 *
 * # Safety
 * `system` is null or came from [`waring_system_new`] and has not been freed.
 */
void waring_system_free(struct WaringSystem *system);

/**
 * Measured projective dimension at the sampled configuration; `-1` means empty.
 *
 * # Safety
 * `system` is null or a live handle; output pointers are null or valid for writes.
 */
enum WaringStatus waring_system_dim(const struct WaringSystem *system, int64_t *dim);

/**
 * Singularities of a random member of a `G(d,n,l)` handle.
 *
 * # Safety
 * `system` is null or a live handle; output pointers are null or valid for writes.
 */
enum WaringStatus waring_system_sing(const struct WaringSystem *system,
                                     size_t slices,
                                     enum WaringSing *sing);

/**
 * Measured and expected dimension of the `k`-secant variety of the Veronese.
 *
 * # Safety
 * Output pointers are null or valid for writes.
 */
enum WaringStatus waring_secant_dim(uint32_t d,
                                    uint32_t n,
                                    uint32_t k,
                                    uint64_t prime,
                                    uint32_t trials,
                                    uint64_t seed,
                                    int64_t *measured,
                                    int64_t *expected);

/**
 * Catalecticant certificate of the odd-degree binary form `sum C(d,i) c_i X^{d-i} Y^i`.
 *
 * # Safety
 * `coeffs` points to `len` readable values; output pointers are null or valid for writes.
 */
enum WaringStatus waring_sylvester(const int64_t *coeffs,
                                   size_t len,
                                   bool *unique,
                                   uint32_t *summands);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WARING_H */
