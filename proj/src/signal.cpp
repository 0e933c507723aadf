#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace hvaf {

namespace {
constexpr int kSeparationResampleCap = 10000;
}

Complex ExponentialComponent::node() const {
    return std::exp(Complex(-damping, 2.0 * std::numbers::pi * frequency));
}

void ExponentialModel::sort_by_frequency() {
    std::sort(components.begin(), components.end(),
              [](const ExponentialComponent& a, const ExponentialComponent& b) {
                  return a.frequency < b.frequency;
              });
}

Vector synthesize(const ExponentialModel& model, Index n) {
    if (model.components.empty()) {
        throw std::invalid_argument("synthesize: model has no components");
    }
    if (n < 1) {
        throw std::invalid_argument("synthesize: length must be positive");
    }
    Vector y = Vector::Zero(n);
    for (const auto& comp : model.components) {
        const Complex z = comp.node();
        Complex power = comp.amplitude;
        for (Index k = 0; k < n; ++k) {
            power *= z;               // c * z^(k+1): samples start at k = 1
            y(k) += power;
        }
    }
    return y;
}

VandermondeFactor vandermonde_factor(const ExponentialModel& model, Index rows) {
    if (rows < 1) {
        throw std::invalid_argument("vandermonde_factor: rows must be positive");
    }
    const int order = model.order();
    VandermondeFactor out;
    out.basis.resize(rows, order);
    out.weights.resize(order);
    for (int r = 0; r < order; ++r) {
        const Complex z = model.components[r].node();
        out.weights(r) = model.components[r].amplitude * z;
        Complex power = 1.0;
        for (Index k = 0; k < rows; ++k) {
            out.basis(k, r) = power;
            power *= z;
        }
    }
    return out;
}

double min_wraparound_separation(const ExponentialModel& model) {
    const int order = model.order();
    double best = 1.0;
    for (int a = 0; a < order; ++a) {
        for (int b = a + 1; b < order; ++b) {
            const double d =
                std::abs(model.components[a].frequency - model.components[b].frequency);
            best = std::min(best, std::min(d, 1.0 - d));
        }
    }
    return best;
}

ExponentialModel random_model(int order, bool damped, std::uint64_t seed,
                              std::optional<double> min_separation) {
    if (order < 1) {
        throw std::invalid_argument("random_model: order must be at least 1");
    }
    if (min_separation && order * *min_separation >= 1.0) {
        throw std::invalid_argument("random_model: separation " +
                                    std::to_string(*min_separation) +
                                    " is infeasible for " + std::to_string(order) +
                                    " frequencies on the unit circle");
    }
    Rng rng(seed);
    std::vector<double> freqs(order);
    int attempts = 0;
    for (;;) {
        for (double& f : freqs) f = rng.uniform();
        bool ok = true;
        for (int a = 0; a < order && ok; ++a) {
            for (int b = a + 1; b < order && ok; ++b) {
                const double d = std::abs(freqs[a] - freqs[b]);
                const double wrap = std::min(d, 1.0 - d);
                if (wrap == 0.0) ok = false;
                if (min_separation && wrap < *min_separation) ok = false;
            }
        }
        if (ok) break;
        if (++attempts >= kSeparationResampleCap) {
            throw std::runtime_error("random_model: separation constraint not met after " +
                                     std::to_string(kSeparationResampleCap) + " resamples");
        }
    }

    ExponentialModel model;
    model.components.resize(order);
    for (int r = 0; r < order; ++r) {
        auto& comp = model.components[r];
        comp.frequency = freqs[r];
        const double magnitude = 1.0 + std::pow(10.0, 0.5 * rng.uniform());
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        comp.amplitude = std::polar(magnitude, phase);
        comp.damping = damped ? 1.0 / (10.0 + 30.0 * rng.uniform()) : 0.0;
    }
    return model;
}

Vector ObservationSet::zero_filled() const {
    Vector x = Vector::Zero(n);
    for (Index i = 0; i < sample_count(); ++i) {
        x(indices[i] - 1) = values(i);
    }
    return x;
}

void ObservationSet::validate() const {
    if (n < 1) throw std::invalid_argument("ObservationSet: empty signal");
    Index prev = 0;
    for (Index idx : indices) {
        if (idx <= prev || idx > n) {
            throw std::invalid_argument("ObservationSet: indices must be strictly increasing in [1, " +
                                        std::to_string(n) + "]");
        }
        prev = idx;
    }
    if (values.size() != 0 && values.size() != sample_count()) {
        throw std::invalid_argument("ObservationSet: value count does not match index count");
    }
}

ObservationSet random_mask(Index n, Index m, std::uint64_t seed) {
    if (n < 1 || m < 1 || m > n) {
        throw std::invalid_argument("random_mask: need 1 <= M <= n, got M=" + std::to_string(m) +
                                    " n=" + std::to_string(n));
    }
    Rng rng(seed);
    std::vector<Index> pool(n);
    for (Index i = 0; i < n; ++i) pool[i] = i + 1;
    for (Index i = 0; i < m; ++i) {
        const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    ObservationSet mask;
    mask.n = n;
    mask.indices.assign(pool.begin(), pool.begin() + m);
    std::sort(mask.indices.begin(), mask.indices.end());
    return mask;
}

ObservationSet observe(const Vector& y, const ObservationSet& mask) {
    mask.validate();
    if (y.size() != mask.n) {
        throw std::invalid_argument("observe: signal length does not match mask");
    }
    ObservationSet out = mask;
    out.values.resize(out.sample_count());
    for (Index i = 0; i < out.sample_count(); ++i) {
        out.values(i) = y(out.indices[i] - 1);
    }
    return out;
}

ObservationSet add_noise(const ObservationSet& obs, double sigma, std::uint64_t seed) {
    obs.validate();
    if (!obs.has_values()) {
        throw std::invalid_argument("add_noise: observation set has no values");
    }
    if (sigma < 0.0) {
        throw std::invalid_argument("add_noise: noise level must be nonnegative");
    }
    ObservationSet out = obs;
    if (sigma == 0.0 || obs.sample_count() == 0) return out;
    Rng rng(seed);
    Vector w(obs.sample_count());
    for (Index i = 0; i < w.size(); ++i) w(i) = rng.complex_normal();
    out.values += (sigma * obs.values.norm() / w.norm()) * w;
    return out;
}

Vector peak_normalize(const Eigen::Ref<const Vector>& x) {
    const double peak = x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
    if (peak == 0.0) {
        throw std::invalid_argument("peak_normalize: signal is identically zero");
    }
    return x / peak;
}

}  // namespace hvaf
