/*
 * hvaf -- recovery of sums of (possibly damped) complex exponentials from a
 * random subset of samples, by Hankel matrix completion with a Vandermonde
 * factorization prior; plus a nuclear-norm completion baseline, ESPRIT
 * parameter estimation and a Monte-Carlo experiment harness.
 *
 * Conventions: signals are split double arrays (re, im) of length n; sample
 * indices are 1-based and strictly increasing. Every call returns HVAF_OK or
 * an error code; hvaf_last_error() describes the most recent failure on the
 * calling thread.
 */
#ifndef HVAF_H
#define HVAF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hvaf_status {
    HVAF_OK = 0,
    HVAF_ERR_INVALID_ARGUMENT = 1,  /* bad dimensions, ranges or null pointers */
    HVAF_ERR_NUMERIC = 2,           /* a dense factorization failed */
    HVAF_ERR_IO = 3,                /* file output failed */
    HVAF_ERR_VALIDATION = 4,        /* experiment spec rejected; see message */
} hvaf_status;

const char* hvaf_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* hvaf_last_error(void);

/* ----- signal synthesis and random ensembles ----------------------------- */

/* y_k = sum_r c_r exp((2 pi i f_r - tau_r) k), k = 1..n. */
hvaf_status hvaf_synthesize(int32_t ncomp, const double* freq, const double* amp_re,
                            const double* amp_im, const double* damping, int32_t n,
                            double* out_re, double* out_im);

/* Draws ncomp components: f ~ U[0,1), |c| = 1 + 10^(0.5 u), random phase;
 * damped != 0 adds tau = 1/(10 + 30 u). min_separation > 0 enforces a
 * minimum wrap-around distance between frequencies by resampling. */
hvaf_status hvaf_random_model(int32_t ncomp, int damped, double min_separation, uint64_t seed,
                              double* freq, double* amp_re, double* amp_im, double* damping);

/* m distinct 1-based indices out of 1..n, sorted ascending. */
hvaf_status hvaf_random_mask(int32_t n, int32_t m, uint64_t seed, int32_t* indices);

/* In-place noise with exact relative norm sigma: e = sigma ||v|| w / ||w||. */
hvaf_status hvaf_add_noise(int32_t m, double sigma, uint64_t seed, double* re, double* im);

/* In-place scaling so the largest entry magnitude is one. */
hvaf_status hvaf_normalize(int32_t n, double* re, double* im);

/* ----- solver ------------------------------------------------------------- */

typedef struct hvaf_solver hvaf_solver;

hvaf_solver* hvaf_solver_create(void);
void hvaf_solver_destroy(hvaf_solver* solver);

/* method: "hvaf" (default) or "lrhm" (nuclear-norm baseline). */
hvaf_status hvaf_solver_set_method(hvaf_solver* solver, const char* method);
hvaf_status hvaf_solver_set_rank(hvaf_solver* solver, int32_t rank);
/* noisy != 0 replaces the exact data constraint by a lambda-weighted fit. */
hvaf_status hvaf_solver_set_noisy(hvaf_solver* solver, int noisy, double lambda);
hvaf_status hvaf_solver_set_continuation(hvaf_solver* solver, double beta0, double beta_max);
hvaf_status hvaf_solver_set_penalty(hvaf_solver* solver, double mu0, double rho);
hvaf_status hvaf_solver_set_stopping(hvaf_solver* solver, double tol, int32_t max_inner_iters);
/* strategy: "svd" (warm start, default) or "random" (seeded Gaussian). */
hvaf_status hvaf_solver_set_init(hvaf_solver* solver, const char* strategy, uint64_t seed);

/* Recovers a length-n signal from m observed samples (1-based indices).
 * out_re/out_im receive all n entries. The run's report is kept on the
 * handle until the next run. */
hvaf_status hvaf_solver_run(hvaf_solver* solver, int32_t n, int32_t m, const int32_t* indices,
                            const double* obs_re, const double* obs_im, double* out_re,
                            double* out_im);

/* Column-wise recovery of an nrows x ncols column-major matrix; the mask of
 * column j is mask_indices[mask_offsets[j] .. mask_offsets[j+1]). Columns
 * are independent; a failing column leaves zeros and is reported in the
 * report JSON, and the call returns HVAF_ERR_NUMERIC. */
hvaf_status hvaf_solver_run_columns(hvaf_solver* solver, int32_t nrows, int32_t ncols,
                                    const int32_t* mask_offsets, const int32_t* mask_indices,
                                    const double* obs_re, const double* obs_im, double* out_re,
                                    double* out_im);

/* 1 when the last run met the stopping tolerance in its final stage. */
int hvaf_solver_converged(const hvaf_solver* solver);

/* JSON report of the last run (stages, traces, timing); owned by the
 * handle, valid until the next run or destroy. NULL if no run happened. */
const char* hvaf_solver_report_json(hvaf_solver* solver);

/* ----- parameter estimation (ESPRIT) -------------------------------------- */

/* Estimates rank components from a length-n signal; outputs are sorted by
 * frequency. ill_conditioned (optional) is set when the amplitude fit was
 * rank-deficient. Requires n >= 2*rank + 1. */
hvaf_status hvaf_estimate(int32_t n, const double* re, const double* im, int32_t rank,
                          double* freq, double* amp_re, double* amp_im, double* damping,
                          int* ill_conditioned);

/* ----- metrics ------------------------------------------------------------ */

/* ||x - y|| / ||y||. */
hvaf_status hvaf_rlne(int32_t n, const double* x_re, const double* x_im, const double* y_re,
                      const double* y_im, double* out);

/* ----- experiments -------------------------------------------------------- */

/* Runs the experiment described by a JSON spec string and writes the result
 * CSV and the run manifest. Returns HVAF_ERR_VALIDATION on schema errors
 * (offending fields in the message) and HVAF_ERR_IO on write failures. */
hvaf_status hvaf_experiment_run(const char* spec_json, const char* csv_path,
                                const char* manifest_path);

#ifdef __cplusplus
}
#endif

#endif /* HVAF_H */
