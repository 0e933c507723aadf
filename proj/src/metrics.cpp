#include "metrics.hpp"

namespace hvaf {

bool recovery_success(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
    return rlne(x, y) <= 1e-3;
}

double snr_db(const Eigen::Ref<const Vector>& noise, const Eigen::Ref<const Vector>& observed) {
    const double ref = observed.squaredNorm();
    if (ref == 0.0) {
        throw std::invalid_argument("snr_db: observed signal is zero");
    }
    return -10.0 * std::log10(noise.squaredNorm() / ref);
}

}  // namespace hvaf
