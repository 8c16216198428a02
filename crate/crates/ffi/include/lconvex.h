#ifndef LCONVEX_H
#define LCONVEX_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_PANIC = 2,
  LC_STATUS_INVALID_UTF8 = 3,
  LC_STATUS_DEGENERATE_JET = 10,
  LC_STATUS_NOT_A_ROTATION = 11,
  LC_STATUS_STEP_TOO_COARSE = 12,
  LC_STATUS_NON_POSITIVE_SPEED = 13,
  LC_STATUS_NOT_CLOSED = 14,
  LC_STATUS_NOT_IMMERSED = 15,
  LC_STATUS_BREAKPOINT_MISMATCH = 16,
  LC_STATUS_FLOWER_ON_PATH = 17,
  LC_STATUS_DOMAIN_ERROR = 18,
  LC_STATUS_INCOMPATIBLE_ENDPOINT = 19,
  LC_STATUS_NOT_LOCALLY_CONVEX = 20,
  LC_STATUS_GAP_TOO_WIDE = 21,
  LC_STATUS_TANGENTIAL_CROSSING = 22,
  LC_STATUS_WRONG_CROSSING_COUNT = 23,
  LC_STATUS_NON_INTEGER_DEGREE = 24,
  LC_STATUS_MASK_BOUNDARY_ZERO = 25,
  LC_STATUS_PARSE = 26,
  LC_STATUS_CONFIG = 27,
} LcStatus;

/**
 * Component of a closed locally convex curve.
 */
typedef enum LcComponent {
  LC_COMPONENT_MINUS_CONVEX = 0,
  LC_COMPONENT_PLUS = 1,
  LC_COMPONENT_MINUS_NON_CONVEX = 2,
} LcComponent;

/**
 * Opaque curve handle.
 */
typedef struct LcCurve LcCurve;

/**
 * Opaque family handle.
 */
typedef struct LcFamily LcFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *lc_version(void);

/**
 * Message of the last failure on this thread, or NULL. Valid until the next failing call.
 */
const char *lc_last_error_message(void);

/**
 * νc, the circle traversed c times (c > 0).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LcStatus lc_curve_nu(double c, struct LcCurve **out);

/**
 * Member (s1, s2) of the 𝐠₊,₂ family; both parameters in [0, 1].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LcStatus lc_curve_g_plus_2(double s1, double s2, struct LcCurve **out);

/**
 * Curve from a descriptor such as `"g_plus_2 s1=0.3 s2=0.4"` or `"flower petals=3"`.
 *
 * # Safety
 * `desc` must be a nul-terminated string and `out` valid for writes.
 */
enum LcStatus lc_curve_from_descriptor(const char *desc, struct LcCurve **out);

/**
 * Curve through `n_points` uniform samples at t = i/(n_points − 1), packed as x, y, z triples.
 *
 * # Safety
 * `xyz` must point to `3 * n_points` doubles and `out` be valid for writes.
 */
enum LcStatus lc_curve_from_samples(const double *xyz, size_t n_points, struct LcCurve **out);

/**
 * Releases a curve. NULL is ignored.
 *
 * # Safety
 * `c` must come from an `lc_curve_*` constructor and not be freed twice.
 */
void lc_curve_free(struct LcCurve *c);

/**
 * Point, velocity and acceleration at t, written to `out[0..9]`.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for 9 doubles.
 */
enum LcStatus lc_curve_eval(const struct LcCurve *c, double t, double *out);

/**
 * Smallest normalised det(γ, γ′, γ″) over `samples` uniform samples.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum LcStatus lc_curve_margin(const struct LcCurve *c, size_t samples, double *out);

/**
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum LcStatus lc_curve_classify(const struct LcCurve *c, enum LcComponent *out);

/**
 * Endpoint of the lifted frame path in S³ as (w, x, y, z).
 *
 * # Safety
 * `c` must be a live handle and `out` valid for 4 doubles.
 */
enum LcStatus lc_curve_phi(const struct LcCurve *c, double *out);

/**
 * Writes the petal count of a flower, or 0 when the curve is not one.
 *
 * # Safety
 * `c` must be a live handle and `petals` valid for writes.
 */
enum LcStatus lc_curve_is_flower(const struct LcCurve *c, uint32_t *petals);

/**
 * Family from a descriptor such as `"g_plus_2 grid=32x32"`; without `grid=` the default 128×128 is used.
 *
 * # Safety
 * `desc` must be a nul-terminated string and `out` valid for writes.
 */
enum LcStatus lc_family_from_descriptor(const char *desc,
                                        struct LcFamily **out);

/**
 * Releases a family. NULL is ignored.
 *
 * # Safety
 * `f` must come from `lc_family_from_descriptor` and not be freed twice.
 */
void lc_family_free(struct LcFamily *f);

/**
 * Degree of the frame map at the basepoint, on the family grid with as many time steps as
 * the first grid dimension. `integral` may be NULL.
 *
 * # Safety
 * `f` must be a live handle, `degree` valid for writes, `integral` NULL or valid for writes.
 */
enum LcStatus lc_family_degree(const struct LcFamily *f, int64_t *degree, double *integral);

/**
 * Signed flower count of the family.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
enum LcStatus lc_family_count_f2(const struct LcFamily *f, int64_t *out);

/**
 * Grid dimensions of the family.
 *
 * # Safety
 * `f` must be a live handle, `m1` and `m2` valid for writes.
 */
enum LcStatus lc_family_grid(const struct LcFamily *f, size_t *m1, size_t *m2);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCONVEX_H */
