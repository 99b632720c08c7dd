#ifndef MFBOUNDS_H
#define MFBOUNDS_H

/* Generated by cbindgen from mfbounds-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum MfbStatus {
  MFB_STATUS_OK = 0,
  // Invalid parameters or arguments.
  MFB_STATUS_INVALID = 1,
  // Numeric or runtime failure.
  MFB_STATUS_NUMERIC = 2,
  // A required pointer was null.
  MFB_STATUS_NULL_POINTER = 3,
} MfbStatus;

// Closed-form scaling-function families. Parameter slots:
// SelfSimilar(hurst, -), Stable(alpha, -), Lfsm(hurst, alpha),
// Levy(alpha, -), Cascade(lambda2, -), CascadeLinearized(lambda2, -),
// Mrw(lambda2, -).
typedef enum MfbTauFamily {
  MFB_TAU_FAMILY_SELF_SIMILAR = 0,
  MFB_TAU_FAMILY_STABLE = 1,
  MFB_TAU_FAMILY_LFSM = 2,
  MFB_TAU_FAMILY_LEVY = 3,
  MFB_TAU_FAMILY_CASCADE = 4,
  MFB_TAU_FAMILY_CASCADE_LINEARIZED = 5,
  MFB_TAU_FAMILY_MRW = 6,
} MfbTauFamily;

// Opaque sample path handle.
typedef struct MfbPath MfbPath;

// Opaque scaling-function estimate handle.
typedef struct MfbTau MfbTau;

// Spectrum-support bounds. Absent bounds are reported as NaN.
typedef struct MfbBounds {
  double h_minus;
  double h_tilde_plus;
  double h_plus;
  double hsssi_low;
  double hsssi_high;
  // 1 when every positive moment is finite (trivial spectrum), else 0.
  int32_t trivial;
} MfbBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message on this thread into `buf` (NUL-terminated,
// truncated to `cap` bytes). Returns the full message length in bytes.
//
// # Safety
// `buf` must point to at least `cap` writable bytes, or be null (then only
// the length is returned).
size_t mfb_last_error(char *buf, size_t cap);

// Simulate a path from a JSON process specification (same schema as the
// CSV sidecars), e.g. `{"family":"mrw","lambda2":0.025,"horizon":1024.0}`.
//
// # Safety
// `spec_json` must be a NUL-terminated UTF-8 string; `out` must be a valid
// pointer. The returned handle must be freed with [`mfb_path_free`].
enum MfbStatus mfb_path_simulate_json(const char *spec_json,
                                      size_t n,
                                      double horizon,
                                      unsigned long long seed,
                                      struct MfbPath **out);

// Simulate standard Brownian motion.
//
// # Safety
// `out` must be valid; free the handle with [`mfb_path_free`].
enum MfbStatus mfb_path_simulate_bm(size_t n,
                                    double horizon,
                                    unsigned long long seed,
                                    struct MfbPath **out);

// Simulate fractional Brownian motion with Hurst index `hurst`.
//
// # Safety
// `out` must be valid; free the handle with [`mfb_path_free`].
enum MfbStatus mfb_path_simulate_fbm(double hurst,
                                     size_t n,
                                     double horizon,
                                     unsigned long long seed,
                                     struct MfbPath **out);

// Simulate an alpha-stable Levy motion.
//
// # Safety
// `out` must be valid; free the handle with [`mfb_path_free`].
enum MfbStatus mfb_path_simulate_stable(double alpha,
                                        double sigma,
                                        double beta,
                                        double mu,
                                        size_t n,
                                        double horizon,
                                        unsigned long long seed,
                                        struct MfbPath **out);

// Number of samples in the path (n + 1).
//
// # Safety
// `path` must be a live handle from a `mfb_path_simulate_*` call.
size_t mfb_path_len(const struct MfbPath *path);

// Copy times and/or values into caller buffers of length [`mfb_path_len`].
// Either destination may be null to skip it.
//
// # Safety
// Non-null destinations must have room for `mfb_path_len(path)` doubles.
enum MfbStatus mfb_path_copy(const struct MfbPath *path, double *times_out, double *values_out);

// Release a path handle.
//
// # Safety
// `path` must come from a `mfb_path_simulate_*` call and not be freed twice.
void mfb_path_free(struct MfbPath *path);

// Estimate the scaling function of `path` on the given moment orders and
// lags. `m = 0` selects the standard partition function; `m >= 1` the
// modified (max of m increments) variant.
//
// # Safety
// `qs`/`deltas` must point to `nq`/`nd` doubles; `out` must be valid. Free
// the result with [`mfb_tau_free`].
enum MfbStatus mfb_scaling_estimate(const struct MfbPath *path,
                                    const double *qs,
                                    size_t nq,
                                    const double *deltas,
                                    size_t nd,
                                    uint32_t m,
                                    struct MfbTau **out);

// Number of moment orders in the estimate.
//
// # Safety
// `tau` must be a live handle.
size_t mfb_tau_len(const struct MfbTau *tau);

// Copy the estimate columns into caller buffers of length [`mfb_tau_len`].
// Any destination may be null to skip that column.
//
// # Safety
// Non-null destinations must have room for `mfb_tau_len(tau)` doubles.
enum MfbStatus mfb_tau_copy(const struct MfbTau *tau,
                            double *qs_out,
                            double *tau_out,
                            double *r2_out);

// Release a scaling-estimate handle.
//
// # Safety
// `tau` must come from [`mfb_scaling_estimate`] and not be freed twice.
void mfb_tau_free(struct MfbTau *tau);

// Evaluate the closed-form scaling function at `q`.
//
// # Safety
// `out` must be a valid pointer.
enum MfbStatus mfb_theoretical_tau_eval(enum MfbTauFamily family,
                                        double p1,
                                        double p2,
                                        double q,
                                        double *out);

// Compute support bounds for a closed-form family. Pass NaN for
// `q_lower`/`q_upper` to keep the family's natural moment range.
//
// # Safety
// `out` must be a valid pointer.
enum MfbStatus mfb_support_bounds(enum MfbTauFamily family,
                                  double p1,
                                  double p2,
                                  double q_lower,
                                  double q_upper,
                                  struct MfbBounds *out);

// Numeric Legendre spectrum of a tabulated scaling function:
// `d[i] = inf_{q in [q_min, q_max]} (h[i] q - tau(q) + 1)`, with
// `-INFINITY` marking unattained exponents.
//
// # Safety
// `qs`/`tau` must hold `n` doubles, `hs` and `d_out` must hold `nh` doubles.
enum MfbStatus mfb_legendre_spectrum(const double *qs,
                                     const double *tau,
                                     size_t n,
                                     const double *hs,
                                     size_t nh,
                                     double q_min,
                                     double q_max,
                                     double q_step,
                                     double *d_out);

// Absolute moment `E|X(1)|^q` of the IG(delta, lambda) law by quadrature.
//
// # Safety
// `out` must be a valid pointer.
enum MfbStatus mfb_ig_abs_moment(double q, double delta, double lambda, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MFBOUNDS_H */
