#ifndef HVAF_SOLVER_HPP
#define HVAF_SOLVER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "signal.hpp"

namespace hvaf {

enum class FactorInit {
    SvdWarmStart,   // truncated SVD of the zero-filled signal's Hankel lift
    SeededRandom,   // i.i.d. complex Gaussian entries, norm-matched scale
};

/// Tunables of the continuation ADMM. Defaults follow the reference settings:
/// penalty doubling from 2^5 to 2^30, inner penalty mu growing by rho each
/// iteration, stop at relative change 1e-7.
struct SolverConfig {
    int rank = 1;                      // estimated number of exponentials
    double beta0 = 32.0;               // initial factorization penalty (2^5)
    double beta_max = 1073741824.0;    // final factorization penalty (2^30)
    double mu0 = 1e-2;                 // initial ADMM penalty
    double rho = 1.05;                 // mu growth rate, in (1, 1.1]
    bool noisy = false;                // exact data constraint vs lambda-weighted fit
    double lambda = 500.0;             // data-fidelity weight in noisy mode
    double inner_tol = 1e-7;           // relative-change stopping threshold
    int max_inner_iters = 500;         // safety cap per continuation stage
    FactorInit init = FactorInit::SvdWarmStart;
    std::uint64_t seed = 0;
    bool reset_mu_each_stage = true;   // restart mu at mu0 whenever beta doubles

    void validate() const;
};

struct StageTrace {
    double beta = 0.0;
    int iterations = 0;
    double final_relative_change = 0.0;
    double factorization_residual = 0.0;   // ||Hx - U V^T||_F at stage end
};

struct SolverReport {
    Vector recovered;
    std::vector<StageTrace> stages;
    std::vector<double> multiplier_norm_trace;   // per-iteration max spectral norm
    std::vector<double> nuclear_norm_trace;      // per-iteration ||Hx||_* (baseline only)
    double wall_time_seconds = 0.0;
    bool converged = false;
};

/// Factor initialization. Warm start takes the best rank-R approximation of
/// the zero-filled lift, split as U = A sqrt(S), V = conj(B) sqrt(S) so that
/// U V^T reproduces it. Random init draws complex Gaussian entries scaled by
/// ||observed|| / sqrt(n * rank).
std::pair<Matrix, Matrix> init_factors(const ObservationSet& obs, HankelShape shape, int rank,
                                       FactorInit strategy, std::uint64_t seed);

/// One half-step of the factor update: solves the stationarity equation
///   mu (T .* F) + beta F (P^T conj(P)) = RHS
/// row by row, where every column of T is col_weights and
///   RHS = mu sum_r embed_r(adjoint(aux_r - mult_r/mu)) + beta hx_side conj(P).
/// Pass hx_side = Hx, P = V to update U, and hx_side = (Hx)^T, P = U for V.
/// Each transposed row system is Hermitian positive definite.
Matrix update_factor(const Matrix& hx_side, const Matrix& companion,
                     const std::vector<Matrix>& aux, const std::vector<Matrix>& mult, double mu,
                     double beta, const RealVector& col_weights);

/// Exact-constraint signal update: observed entries are pinned to the data,
/// unobserved entries take the anti-diagonal average of U V^T.
Vector update_x_exact(const Matrix& uvt, const ObservationSet& obs, const RealVector& w);

/// Noisy-mode signal update: entrywise
///   x_k = (beta adj_k + lambda y_k [k observed]) / (beta w_k + lambda [k observed]).
Vector update_x_noisy(const Matrix& uvt, const ObservationSet& obs, const RealVector& w,
                      double beta, double lambda);

/// Full iterate state of the splitting scheme. The auxiliaries b/c hold the
/// Hankel lifts of the factor columns after thresholding; d/m are their
/// multipliers and stay spectrally bounded by one.
struct AdmmState {
    Vector x;
    Matrix u, v;
    std::vector<Matrix> b, c;   // per-column auxiliaries
    std::vector<Matrix> d, m;   // multipliers
    double mu = 0.0;
    double beta = 0.0;
};

/// Advances b_r/c_r by singular value soft-thresholding at 1/mu, then the
/// multipliers with the fresh auxiliaries. Returns the largest multiplier
/// spectral norm after the update.
double update_auxiliaries_and_multipliers(AdmmState& state);

/// Recovers a signal from partial samples by completing its Hankel lift with
/// a factorization whose columns are pushed toward single exponentials.
SolverReport solve(const ObservationSet& obs, const SolverConfig& config);

struct ColumnwiseResult {
    Matrix recovered;
    std::vector<SolverReport> reports;
    std::vector<std::string> column_errors;   // empty string when the column succeeded

    bool all_ok() const;
};

/// Independent per-column recovery (noisy mode) of a partially sampled
/// matrix; a failing column is reported without aborting the others.
ColumnwiseResult solve_columns(const Matrix& data, const std::vector<ObservationSet>& masks,
                               const SolverConfig& config);

}  // namespace hvaf

#endif
