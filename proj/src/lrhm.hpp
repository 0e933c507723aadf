#ifndef HVAF_LRHM_HPP
#define HVAF_LRHM_HPP

#include "solver.hpp"

namespace hvaf {

/// Nuclear-norm low-rank Hankel matrix completion baseline: minimizes
/// ||Hx||_* subject to the observed entries (exact mode) or with a
/// lambda-weighted data-fidelity term (noisy mode). ADMM with a single
/// Hankel splitting variable and singular value soft-thresholding; reuses
/// mu0, rho, lambda, inner_tol and max_inner_iters from SolverConfig.
SolverReport solve_lrhm(const ObservationSet& obs, const SolverConfig& config);

}  // namespace hvaf

#endif
