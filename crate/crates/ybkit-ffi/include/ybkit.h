#ifndef YBKIT_H
#define YBKIT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum YbStatus {
  YB_STATUS_OK = 0,
  YB_STATUS_NULL_POINTER = 1,
  YB_STATUS_INVALID_TAU = 2,
  YB_STATUS_NON_FINITE = 3,
  YB_STATUS_POLE_PROXIMITY = 4,
  YB_STATUS_NO_CONVERGENCE = 5,
  YB_STATUS_INVALID_PARAMETER = 6,
  YB_STATUS_SIZE_MISMATCH = 7,
  YB_STATUS_WRONG_KIND = 8,
  YB_STATUS_SINGULAR = 9,
  YB_STATUS_UNSTABLE = 10,
  YB_STATUS_PARSE = 11,
  YB_STATUS_IO = 12,
  YB_STATUS_BUFFER_TOO_SMALL = 13,
  YB_STATUS_PANIC = 14,
} YbStatus;

typedef enum YbFamily {
  YB_FAMILY_ELLIPTIC_AYBE = 0,
  YB_FAMILY_ELLIPTIC_CYBE = 1,
  YB_FAMILY_TRIG_AYBE1 = 2,
  YB_FAMILY_TRIG_AYBE2 = 3,
  YB_FAMILY_TRIG_AYBE2_REDUCED = 4,
  YB_FAMILY_TRIG_CYBE1 = 5,
  YB_FAMILY_TRIG_CYBE2 = 6,
  YB_FAMILY_SCALAR_KRONECKER = 7,
  YB_FAMILY_SCALAR_TRIG = 8,
  YB_FAMILY_SCALAR_RATIONAL = 9,
} YbFamily;

typedef enum YbVerdict {
  YB_VERDICT_RATIONAL_LIKE = 0,
  YB_VERDICT_ELLIPTIC_LIKE = 1,
  YB_VERDICT_TRIGONOMETRIC_LIKE = 2,
} YbVerdict;

/**
 * Opaque solution handle.
 */
typedef struct YbHandle YbHandle;

typedef struct YbComplex {
  double re;
  double im;
} YbComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a handle. `d`, `r` and `tau` are used by the elliptic and Kronecker
 * families, `a` and `b` by the rational family; other arguments are ignored.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum YbStatus yb_handle_new(enum YbFamily family,
                            size_t d,
                            size_t r,
                            struct YbComplex tau,
                            struct YbComplex a,
                            struct YbComplex b,
                            struct YbHandle **out);

/**
 * Create a handle from a JSON handle descriptor.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` as for `yb_handle_new`.
 */
enum YbStatus yb_handle_from_json(const char *json, struct YbHandle **out);

/**
 * Release a handle. Passing NULL is a no-op.
 *
 * # Safety
 * `h` must come from `yb_handle_new` or `yb_handle_from_json` and not be used afterwards.
 */
void yb_handle_free(struct YbHandle *h);

/**
 * Matrix size n; values have n⁴ coefficients. Returns 0 for NULL.
 *
 * # Safety
 * `h` must be a live handle or NULL.
 */
size_t yb_handle_n(const struct YbHandle *h);

/**
 * Write the n⁴ coefficients of r(u, v) (r̄(v) for CYBE families) in
 * (i, j, i′, j′) row-major order.
 *
 * # Safety
 * `h` must be a live handle; `out` must point to `len` writable values.
 */
enum YbStatus yb_eval(const struct YbHandle *h,
                      struct YbComplex u,
                      struct YbComplex v,
                      struct YbComplex *out,
                      size_t len);

/**
 * Run the default residual suite with the given seed; `*passed` is set to
 * whether every check passed.
 *
 * # Safety
 * `h` must be a live handle; `passed` must be writable.
 */
enum YbStatus yb_verify(const struct YbHandle *h, uint64_t seed, bool *passed);

/**
 * c₃, c₅ of the normal form of a scalar solution and the resulting verdict.
 *
 * # Safety
 * `h` must be a live handle; output pointers must be writable.
 */
enum YbStatus yb_classify_scalar(const struct YbHandle *h,
                                 struct YbComplex *c3,
                                 struct YbComplex *c5,
                                 enum YbVerdict *verdict);

/**
 * θ₁₁(u, τ).
 *
 * # Safety
 * `out` must be writable.
 */
enum YbStatus yb_theta11(struct YbComplex u, struct YbComplex tau, struct YbComplex *out);

/**
 * The Kronecker function F(u, v, τ).
 *
 * # Safety
 * `out` must be writable.
 */
enum YbStatus yb_kronecker_f(struct YbComplex u,
                             struct YbComplex v,
                             struct YbComplex tau,
                             struct YbComplex *out);

/**
 * Weierstrass ζ(x) for the lattice Z + Zτ.
 *
 * # Safety
 * `out` must be writable.
 */
enum YbStatus yb_weierstrass_zeta(struct YbComplex x, struct YbComplex tau, struct YbComplex *out);

/**
 * Weierstrass ℘(x) for the lattice Z + Zτ.
 *
 * # Safety
 * `out` must be writable.
 */
enum YbStatus yb_weierstrass_p(struct YbComplex x, struct YbComplex tau, struct YbComplex *out);

/**
 * j = g₂³/(g₂³ − 27g₃²), normalized so that j(i) = 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum YbStatus yb_j_invariant(struct YbComplex tau, struct YbComplex *out);

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be NULL with `len` = 0.
 */
size_t yb_last_error(char *buf, size_t len);

/**
 * Static description of a status code.
 */
const char *yb_status_str(enum YbStatus s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YBKIT_H */
