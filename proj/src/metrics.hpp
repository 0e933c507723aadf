#ifndef HVAF_METRICS_HPP
#define HVAF_METRICS_HPP

#include <cmath>
#include <stdexcept>

#include "hankel.hpp"

namespace hvaf {

/// Relative least normalized error ||x - y|| / ||y|| (l2 / Frobenius).
template <typename DerivedX, typename DerivedY>
double rlne(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw std::invalid_argument("rlne: shapes differ");
    }
    const double ref = y.norm();
    if (ref == 0.0) {
        throw std::invalid_argument("rlne: reference is identically zero");
    }
    return (x - y).norm() / ref;
}

/// A reconstruction counts as successful when rlne <= 1e-3 (inclusive).
bool recovery_success(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y);

/// -10 log10(||e||^2 / ||observed||^2).
double snr_db(const Eigen::Ref<const Vector>& noise, const Eigen::Ref<const Vector>& observed);

}  // namespace hvaf

#endif
