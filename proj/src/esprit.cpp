#include "esprit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "svt.hpp"

namespace hvaf {

EstimationResult estimate(const Eigen::Ref<const Vector>& x, int rank) {
    const Index n = x.size();
    if (rank < 1 || n < 2 * static_cast<Index>(rank) + 1) {
        throw std::invalid_argument("estimate: need signal length >= 2*rank + 1, got n=" +
                                    std::to_string(n) + " rank=" + std::to_string(rank));
    }
    const HankelShape shape = default_square_shape(n);
    if (rank > std::min(shape.rows - 1, shape.cols)) {
        throw std::invalid_argument("estimate: rank exceeds subspace capacity");
    }

    const Svd svd = thin_svd(hankelize(x, shape));
    const Matrix subspace = svd.u.leftCols(rank);
    const Matrix upper = subspace.topRows(shape.rows - 1);
    const Matrix lower = subspace.bottomRows(shape.rows - 1);
    // Least-squares rotation: eigenvalues are the signal nodes.
    const Matrix rotation =
        (upper.adjoint() * upper).ldlt().solve(upper.adjoint() * lower);
    Eigen::ComplexEigenSolver<Matrix> eigen(rotation);
    if (eigen.info() != Eigen::Success) {
        throw NumericError("estimate: eigen decomposition of the rotation failed");
    }

    EstimationResult result;
    result.model.components.resize(rank);
    for (int r = 0; r < rank; ++r) {
        const Complex node = eigen.eigenvalues()(r);
        auto& comp = result.model.components[r];
        double freq = std::arg(node) / (2.0 * std::numbers::pi);
        freq -= std::floor(freq);  // wrap into [0, 1)
        comp.frequency = freq;
        const double magnitude = std::max(std::abs(node), 1e-12);
        comp.damping = std::max(0.0, -std::log(magnitude));
    }
    result.model.sort_by_frequency();

    // Amplitudes: least-squares fit of x_k = sum_r c_r z_r^k, k = 1..n, with
    // nodes rebuilt from the clamped parameters.
    Matrix vandermonde(n, rank);
    for (int r = 0; r < rank; ++r) {
        const Complex z = result.model.components[r].node();
        Complex power = 1.0;
        for (Index k = 0; k < n; ++k) {
            power *= z;
            vandermonde(k, r) = power;
        }
    }
    const Svd vsvd = thin_svd(vandermonde);
    const double cutoff = vsvd.singular_values(0) * 1e-12;
    result.ill_conditioned = vsvd.singular_values.minCoeff() <= cutoff;
    RealVector inverted = RealVector::Zero(rank);
    for (int r = 0; r < rank; ++r) {
        if (vsvd.singular_values(r) > cutoff) inverted(r) = 1.0 / vsvd.singular_values(r);
    }
    const Vector amplitudes = vsvd.vh.adjoint() * (inverted.asDiagonal() * (vsvd.u.adjoint() * x));
    for (int r = 0; r < rank; ++r) {
        result.model.components[r].amplitude = amplitudes(r);
    }
    return result;
}

bool estimation_success(const ExponentialModel& truth, const ExponentialModel& estimated) {
    if (truth.order() != estimated.order()) {
        throw std::invalid_argument("estimation_success: component counts differ");
    }
    ExponentialModel a = truth;
    ExponentialModel b = estimated;
    a.sort_by_frequency();
    b.sort_by_frequency();

    double freq_err = 0.0, freq_ref = 0.0, amp_err = 0.0, amp_ref = 0.0;
    for (int r = 0; r < a.order(); ++r) {
        const double df = b.components[r].frequency - a.components[r].frequency;
        const double da = std::abs(b.components[r].amplitude) - std::abs(a.components[r].amplitude);
        freq_err += df * df;
        amp_err += da * da;
        freq_ref += a.components[r].frequency * a.components[r].frequency;
        amp_ref += std::norm(a.components[r].amplitude);
    }
    return std::sqrt(freq_err) / std::sqrt(freq_ref) <= 1e-3 &&
           std::sqrt(amp_err) / std::sqrt(amp_ref) <= 1e-3;
}

}  // namespace hvaf
