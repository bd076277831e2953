#ifndef KINKRES_H
#define KINKRES_H

/* Generated by cbindgen from the kinkres-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum KrStatus {
  /**
   * Operation completed.
   */
  KR_OK = 0,
  /**
   * A pointer argument was null.
   */
  KR_NULL_POINTER = 1,
  /**
   * Parameters were rejected (for example k = 0 or a bad range).
   */
  KR_INVALID_ARGUMENT = 2,
  /**
   * The computation could not be completed numerically.
   */
  KR_NUMERICAL_ERROR = 3,
  /**
   * The output buffer was too small; required size is reported.
   */
  KR_BUFFER_TOO_SMALL = 4,
  /**
   * An internal invariant failed; the library state is unchanged.
   */
  KR_INTERNAL_ERROR = 5,
} KrStatus;

/**
 * Spectral equation selector.
 */
typedef enum KrMethod {
  /**
   * Difference-form condition on x > 0.
   */
  KR_METHOD_EXACT_POS = 0,
  /**
   * Sum-form condition on x < 0.
   */
  KR_METHOD_EXACT_NEG = 1,
  /**
   * Linear-potential limit condition.
   */
  KR_METHOD_LINEAR = 2,
} KrMethod;

/**
 * Opaque handle holding a validated parameter set.
 */
typedef struct KrParams KrParams;

/**
 * One resonance returned through the C ABI.
 */
typedef struct KrResonance {
  /**
   * Polynomial degree labelling the state.
   */
  uint32_t n;
  /**
   * Complex energy, real part.
   */
  double energy_re;
  /**
   * Complex energy, imaginary part.
   */
  double energy_im;
  /**
   * Magnitude of the spectral-equation residual at the root.
   */
  double residual;
  /**
   * 1 when the principal-branch decay condition holds, 0 otherwise.
   */
  uint8_t decay_ok;
} KrResonance;

/**
 * One sampled spinor value returned through the C ABI.
 */
typedef struct KrSpinorSample {
  double x;
  double phi_re;
  double phi_im;
  double theta_re;
  double theta_im;
} KrSpinorSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a parameter handle. Returns KR_OK and writes the handle into
 * `out`, which must be released with `kr_params_free`.
 *
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
enum KrStatus kr_params_new(double m, double lambda, double k, double g, struct KrParams **out);

/**
 * Release a handle created by `kr_params_new`. Null is ignored.
 *
 * # Safety
 * `params` must be null or a pointer returned by `kr_params_new` that has
 * not been freed already.
 */
void kr_params_free(struct KrParams *params);

/**
 * Evaluate the potential Lambda tanh(kx).
 *
 * # Safety
 * `params` and `out` must be valid non-null pointers.
 */
enum KrStatus kr_potential(const struct KrParams *params, double x, double *out);

/**
 * Closed-form linear-limit energy candidate for degree n.
 *
 * # Safety
 * `params`, `out_re`, `out_im` must be valid non-null pointers.
 */
enum KrStatus kr_linear_closed_form(const struct KrParams *params,
                                    uint32_t n,
                                    double *out_re,
                                    double *out_im);

/**
 * Find resonances for n in [n_min, n_max] with the default search box.
 * Writes up to `capacity` results into `out` and always stores the total
 * number found in `out_count`; returns KR_BUFFER_TOO_SMALL when the
 * buffer cannot hold them all (the first `capacity` are still written).
 *
 * # Safety
 * `params` and `out_count` must be valid; `out` must point to at least
 * `capacity` writable elements (it may be null when `capacity` is 0).
 */
enum KrStatus kr_find_resonances(const struct KrParams *params,
                                 uint32_t n_min,
                                 uint32_t n_max,
                                 enum KrMethod method,
                                 struct KrResonance *out,
                                 uintptr_t capacity,
                                 uintptr_t *out_count);

/**
 * Argument-principle zero count of the rationalized spectral condition
 * for degree n over the default search box.
 *
 * # Safety
 * `params` and `out` must be valid non-null pointers.
 */
enum KrStatus kr_certified_count(const struct KrParams *params,
                                 uint32_t n,
                                 enum KrMethod method,
                                 int64_t *out);

/**
 * Sample the closed-form spinor at `x` (positive half-line for x > 0,
 * negative for x < 0; x = 0 is rejected).
 *
 * # Safety
 * `params` and `out` must be valid non-null pointers.
 */
enum KrStatus kr_spinor(const struct KrParams *params,
                        double energy_re,
                        double energy_im,
                        uint32_t n,
                        double x,
                        struct KrSpinorSample *out);

/**
 * Magnitude of the left/right matching determinant at a trial energy,
 * including the point-interaction jump.
 *
 * # Safety
 * `params` and `out` must be valid non-null pointers.
 */
enum KrStatus kr_matching_determinant(const struct KrParams *params,
                                      double energy_re,
                                      double energy_im,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KINKRES_H */
