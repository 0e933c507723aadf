#ifndef HVAF_SIGNAL_HPP
#define HVAF_SIGNAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hankel.hpp"

namespace hvaf {

/// One term c * exp((2*pi*i*f - tau) * k) of an exponential mixture.
struct ExponentialComponent {
    double frequency = 0.0;   // normalized, in [0, 1)
    Complex amplitude{0.0, 0.0};
    double damping = 0.0;     // tau >= 0

    /// The node z = exp(2*pi*i*f - tau).
    Complex node() const;
};

struct ExponentialModel {
    std::vector<ExponentialComponent> components;

    int order() const { return static_cast<int>(components.size()); }
    void sort_by_frequency();
};

/// Samples y_k = sum_r c_r z_r^k for k = 1..n (sampling starts at k = 1).
Vector synthesize(const ExponentialModel& model, Index n);

/// Vandermonde factor of the Hankel lift: basis(k, r) = z_r^k (k = 0-based
/// row) and weights_r = c_r * z_r, so that
///   hankelize(synthesize(model, 2*rows - 1)) = basis * diag(weights) * basis^T.
/// The extra node factor in the weights accounts for sampling starting at k=1.
struct VandermondeFactor {
    Matrix basis;              // rows x R
    Vector weights;            // R
};
VandermondeFactor vandermonde_factor(const ExponentialModel& model, Index rows);

/// Random ensemble: f_r ~ U[0,1); c_r = (1 + 10^(0.5 m)) e^{2 pi i theta} with
/// m, theta ~ U[0,1]; damped components get tau = 1/(10 + 30 u), u ~ U[0,1].
/// With min_separation set, frequency sets are rejection-sampled until the
/// minimum wrap-around distance is at least the given value.
ExponentialModel random_model(int order, bool damped, std::uint64_t seed,
                              std::optional<double> min_separation = std::nullopt);

/// Minimum circular distance between any two frequencies of the model.
double min_wraparound_separation(const ExponentialModel& model);

/// Partial observation of a length-n signal: sorted 1-based indices plus the
/// observed values. `values` may be empty for a bare sampling mask.
struct ObservationSet {
    Index n = 0;
    std::vector<Index> indices;   // strictly increasing, in [1, n]
    Vector values;                // size 0 (mask only) or indices.size()

    Index sample_count() const { return static_cast<Index>(indices.size()); }
    bool has_values() const { return values.size() == sample_count(); }

    /// The zero-filled signal: observed entries in place, zeros elsewhere.
    Vector zero_filled() const;

    void validate() const;
};

/// Uniform sampling without replacement of M indices out of 1..n.
ObservationSet random_mask(Index n, Index m, std::uint64_t seed);

/// Fill a mask's values from a full signal.
ObservationSet observe(const Vector& y, const ObservationSet& mask);

/// Additive noise e = sigma * ||values|| * w / ||w|| with w standard complex
/// Gaussian, so that ||e|| = sigma * ||values|| by construction.
ObservationSet add_noise(const ObservationSet& obs, double sigma, std::uint64_t seed);

/// Scale so that the largest entry magnitude is one.
Vector peak_normalize(const Eigen::Ref<const Vector>& x);

}  // namespace hvaf

#endif
