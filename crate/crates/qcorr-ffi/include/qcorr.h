#ifndef QCORR_H
#define QCORR_H

/* Generated by cbindgen from the qcorr-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum QcorrStatus {
  QCORR_STATUS_OK = 0,
  QCORR_STATUS_NULL_POINTER = 1,
  QCORR_STATUS_INVALID_PARAMETER = 2,
  QCORR_STATUS_NON_HERMITIAN = 3,
  QCORR_STATUS_NOT_POSITIVE = 4,
  QCORR_STATUS_TRACE_NOT_ONE = 5,
  QCORR_STATUS_MISSING_DIMS = 6,
  QCORR_STATUS_DIMENSION_MISMATCH = 7,
  QCORR_STATUS_NEGATIVE_SPECTRUM = 8,
  QCORR_STATUS_STEP_TOO_LARGE = 9,
  QCORR_STATUS_DIMENSION_CAP = 10,
  QCORR_STATUS_IO = 11,
  QCORR_STATUS_PARSE = 12,
  QCORR_STATUS_PANIC = 13,
} QcorrStatus;

/**
 * Entropy functional selector for the C surface.
 */
typedef enum QcorrEntropy {
  QCORR_ENTROPY_VON_NEUMANN = 0,
  QCORR_ENTROPY_LINEAR = 1,
} QcorrEntropy;

/**
 * Opaque production-series handle.
 */
typedef struct QcorrSeries QcorrSeries;

/**
 * Opaque density-matrix handle.
 */
typedef struct QcorrState QcorrState;

/**
 * Options for the randomized ensemble searches. `max_ensemble = 0` lets the
 * library pick its default (rank squared).
 */
typedef struct QcorrSearchOptions {
  size_t restarts;
  size_t max_ensemble;
  uint64_t seed;
  size_t iter_cap;
} QcorrSearchOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *qcorr_status_message(enum QcorrStatus status);

/**
 * Creates a state from row-major re/im buffers of length dim*dim. Pass
 * d1 = d2 = 0 for an untagged single-system state; otherwise d1 * d2 must
 * equal dim.
 *
 * # Safety
 * `re` and `im` must point to dim*dim readable doubles and `out` must be a
 * valid location for a handle pointer.
 */
enum QcorrStatus qcorr_state_new(const double *re,
                                 const double *im,
                                 size_t dim,
                                 size_t d1,
                                 size_t d2,
                                 struct QcorrState **out);

/**
 * Reads a QMAT v1 state file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid location.
 */
enum QcorrStatus qcorr_state_read(const char *path, struct QcorrState **out);

/**
 * Writes a state as QMAT v1 (with DIMS when bipartite-tagged).
 *
 * # Safety
 * `state` must be a live handle and `path` a valid NUL-terminated string.
 */
enum QcorrStatus qcorr_state_write(const struct QcorrState *state, const char *path);

/**
 * Frees a state handle. Passing NULL is a no-op.
 *
 * # Safety
 * `state` must have come from this library and not been freed before.
 */
void qcorr_state_free(struct QcorrState *state);

/**
 * Total dimension of the state.
 *
 * # Safety
 * `state` must be a live handle.
 */
size_t qcorr_state_dim(const struct QcorrState *state);

/**
 * Bipartite factor dimensions; both zero when the state is untagged.
 *
 * # Safety
 * `state` must be a live handle; `d1` and `d2` must be writable.
 */
enum QcorrStatus qcorr_state_dims(const struct QcorrState *state, size_t *d1, size_t *d2);

/**
 * Copies the state matrix into row-major re/im buffers of length dim*dim.
 *
 * # Safety
 * Buffers must hold dim*dim writable doubles.
 */
enum QcorrStatus qcorr_state_get(const struct QcorrState *state, double *re, double *im);

/**
 * Gibbs state of the XXZ chain, tagged with the bipartition at `cut`
 * (pass 0 for the default half-chain cut).
 *
 * # Safety
 * `out` must be a valid location for a handle pointer.
 */
enum QcorrStatus qcorr_gibbs_xxz(size_t sites,
                                 double beta,
                                 double delta,
                                 size_t cut,
                                 struct QcorrState **out);

/**
 * The canonical maximally entangled state on an n x n composite.
 *
 * # Safety
 * `out` must be a valid location for a handle pointer.
 */
enum QcorrStatus qcorr_state_max_entangled(size_t n, struct QcorrState **out);

/**
 * The two-qubit singlet state.
 *
 * # Safety
 * `out` must be a valid location for a handle pointer.
 */
enum QcorrStatus qcorr_state_singlet(struct QcorrState **out);

/**
 * Entropy of the state under the chosen functional.
 *
 * # Safety
 * `state` must be a live handle and `value` writable.
 */
enum QcorrStatus qcorr_entropy(const struct QcorrState *state,
                               enum QcorrEntropy functional,
                               double *value);

/**
 * Decomposition-free entanglement bound of a bipartite state.
 *
 * # Safety
 * `state` must be a live handle and `value` writable.
 */
enum QcorrStatus qcorr_ma(const struct QcorrState *state, double *value);

/**
 * PPT verdict from the partial-transpose spectrum.
 *
 * # Safety
 * `state` must be a live handle; outputs must be writable.
 */
enum QcorrStatus qcorr_ppt_direct(const struct QcorrState *state,
                                  bool *is_ppt,
                                  double *min_eigenvalue);

/**
 * PPT verdict from the entanglement mapping (CP and co-CP Choi minima).
 *
 * # Safety
 * `state` must be a live handle; outputs must be writable.
 */
enum QcorrStatus qcorr_ppt_mapping(const struct QcorrState *state,
                                   bool *is_ppt,
                                   double *cp_min,
                                   double *cocp_min);

/**
 * Entanglement of formation by seeded ensemble search.
 *
 * # Safety
 * `state` must be a live handle; outputs must be writable.
 */
enum QcorrStatus qcorr_eof(const struct QcorrState *state,
                           enum QcorrEntropy functional,
                           struct QcorrSearchOptions options,
                           double *value,
                           bool *converged);

/**
 * Quantum-correlation distance for an observable given as row-major re/im
 * buffers of length dim*dim.
 *
 * # Safety
 * `state` must be a live handle; buffers must hold dim*dim doubles; outputs
 * must be writable.
 */
enum QcorrStatus qcorr_dqc(const struct QcorrState *state,
                           const double *obs_re,
                           const double *obs_im,
                           struct QcorrSearchOptions options,
                           double *value,
                           bool *converged);

/**
 * Correlation coefficient of single-factor observables a (x) 1 and 1 (x) b,
 * each given as row-major re/im buffers over its factor dimension.
 *
 * # Safety
 * `state` must be a live handle; buffers must match the factor dimensions;
 * `value` must be writable.
 */
enum QcorrStatus qcorr_cq(const struct QcorrState *state,
                          const double *a_re,
                          const double *a_im,
                          const double *b_re,
                          const double *b_im,
                          double *value);

/**
 * Runs the XXZ jump evolution. `sigma0` may be NULL to start from the
 * alternating product state. Pass `euler = false` for the exact semigroup.
 *
 * # Safety
 * `sigma0`, when non-NULL, must be a live handle; `out` must be a valid
 * location for a handle pointer.
 */
enum QcorrStatus qcorr_evolve_xxz(size_t sites,
                                  double beta,
                                  double delta,
                                  size_t swap_k,
                                  size_t swap_l,
                                  size_t cut,
                                  const struct QcorrState *sigma0,
                                  double tmax,
                                  size_t steps,
                                  bool euler,
                                  bool renormalize,
                                  struct QcorrSeries **out);

/**
 * Number of sampled times in a series.
 *
 * # Safety
 * `series` must be a live handle.
 */
size_t qcorr_series_len(const struct QcorrSeries *series);

/**
 * Reads one series row.
 *
 * # Safety
 * `series` must be a live handle; outputs must be writable.
 */
enum QcorrStatus qcorr_series_get(const struct QcorrSeries *series,
                                  size_t index,
                                  double *t,
                                  double *ea,
                                  double *ma,
                                  double *trace_drift);

/**
 * Writes a series as CSV (`t,ea,ma,trace_drift`).
 *
 * # Safety
 * `series` must be a live handle and `path` a valid NUL-terminated string.
 */
enum QcorrStatus qcorr_series_write_csv(const struct QcorrSeries *series, const char *path);

/**
 * Frees a series handle. Passing NULL is a no-op.
 *
 * # Safety
 * `series` must have come from this library and not been freed before.
 */
void qcorr_series_free(struct QcorrSeries *series);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCORR_H */
