#ifndef TQRM_H
#define TQRM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum TqrmStatus {
  TQRM_STATUS_OK = 0,
  TQRM_STATUS_NULL_POINTER = 1,
  TQRM_STATUS_INVALID_ARGUMENT = 2,
  TQRM_STATUS_CONFIG = 3,
  TQRM_STATUS_CUTOFF_EXCEEDED = 4,
  TQRM_STATUS_NUMERICAL = 5,
  TQRM_STATUS_IO = 6,
  /**
   * A sweep finished but some grid points failed.
   */
  TQRM_STATUS_PARTIAL_FAILURE = 7,
  TQRM_STATUS_PANIC = 8,
} TqrmStatus;

/**
 * Eigen-decomposition at a converged or fixed Fock cutoff.
 */
typedef struct TqrmSpectrum TqrmSpectrum;

/**
 * Hamiltonian parameters; frequencies in units of the chosen reference.
 */
typedef struct TqrmParams {
  double omega;
  double delta1;
  double delta2;
  double g1;
  double g2;
} TqrmParams;

/**
 * Scalar results at one point. Undefined or unrequested values are NaN.
 */
typedef struct TqrmReport {
  double g2;
  double x_excitations;
  double zeta2;
  double n_photons;
  double negativity_qq;
  double negativity_q_f;
  double concurrence;
  double mutual_info;
  double discord;
  double coherence_re;
  double lqu;
  double p0;
  double gap_ratio;
  uint32_t n_fock_used;
  uint32_t m_used;
} TqrmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *tqrm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tqrm_version(void);

/**
 * Evaluate every quantifier at thermal equilibrium with the default bath
 * (α = 0.001ω, ω_c = 10ω). `include_gap` non-zero also fills `gap_ratio`.
 *
 * # Safety
 * `params` and `out` must be null or point to valid structs.
 */
enum TqrmStatus tqrm_evaluate_point(const struct TqrmParams *params,
                                    double temperature,
                                    int32_t include_gap,
                                    struct TqrmReport *out);

/**
 * Liouvillian gap ratio μ₁(g)/μ₁(0) with the default bath at `temperature`.
 *
 * # Safety
 * `params` and `out` must be null or valid.
 */
enum TqrmStatus tqrm_gap_ratio(const struct TqrmParams *params, double temperature, double *out);

/**
 * Diagonalize at Fock cutoff `n_fock`, or with `n_fock == 0` at the cutoff
 * where the lowest `levels` energies are converged. Free the handle with
 * `tqrm_spectrum_free`.
 *
 * # Safety
 * `params` and `out` must be null or valid.
 */
enum TqrmStatus tqrm_spectrum_new(const struct TqrmParams *params,
                                  size_t n_fock,
                                  size_t levels,
                                  struct TqrmSpectrum **out);

/**
 * Number of eigenstates in the handle (0 for null).
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t tqrm_spectrum_len(const struct TqrmSpectrum *h);

/**
 * Fock cutoff used by the handle (0 for null).
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t tqrm_spectrum_n_fock(const struct TqrmSpectrum *h);

/**
 * Copy up to `len` ascending energies and their parities (±1) into the
 * buffers; either buffer may be null. `written` receives the count.
 *
 * # Safety
 * Non-null buffers must hold `len` elements.
 */
enum TqrmStatus tqrm_spectrum_levels(const struct TqrmSpectrum *h,
                                     double *energies,
                                     int8_t *parities,
                                     size_t len,
                                     size_t *written);

/**
 * Release a handle from `tqrm_spectrum_new`. Null is ignored.
 *
 * # Safety
 * `h` must be null or a live handle not used afterwards.
 */
void tqrm_spectrum_free(struct TqrmSpectrum *h);

/**
 * Run a sweep from a JSON config and write its files into `out_dir` (or the
 * config's output.dir when `out_dir` is null). Returns
 * `TQRM_STATUS_PARTIAL_FAILURE` if any grid point failed.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `out_dir` null or one.
 */
enum TqrmStatus tqrm_run_sweep(const char *config_json, const char *out_dir);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TQRM_H */
