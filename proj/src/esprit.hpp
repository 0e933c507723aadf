#ifndef HVAF_ESPRIT_HPP
#define HVAF_ESPRIT_HPP

#include "signal.hpp"

namespace hvaf {

struct EstimationResult {
    ExponentialModel model;          // components sorted by frequency
    bool ill_conditioned = false;    // rank-deficient amplitude fit
};

/// ESPRIT parameter estimation: signal subspace from a truncated SVD of the
/// signal's Hankel lift, nodes from the least-squares rotation between the
/// subspace with its last and first rows removed, dampings clamped at zero,
/// amplitudes by a least-squares Vandermonde fit.
/// Requires x.size() >= 2*rank + 1 and rank within the subspace capacity.
EstimationResult estimate(const Eigen::Ref<const Vector>& x, int rank);

/// The evaluation criterion for parameter estimation: after pairing
/// components by sorted frequency, both aggregate relative errors
///   ||f_hat - f|| / ||f||  and  || |c_hat| - |c| || / || |c| ||
/// must be at most 1e-3 (inclusive).
bool estimation_success(const ExponentialModel& truth, const ExponentialModel& estimated);

}  // namespace hvaf

#endif
