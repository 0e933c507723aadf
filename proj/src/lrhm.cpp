#include "lrhm.hpp"

#include <chrono>
#include <stdexcept>

#include "svt.hpp"

namespace hvaf {

SolverReport solve_lrhm(const ObservationSet& obs, const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    obs.validate();
    if (obs.sample_count() < 1 || !obs.has_values()) {
        throw std::invalid_argument("solve_lrhm: need at least one observed sample");
    }

    const HankelShape shape = default_square_shape(obs.n);
    const RealVector w = antidiag_weights(shape);

    Vector x = obs.zero_filled();
    Matrix hx = hankelize(x, shape);
    Matrix lift = Matrix::Zero(shape.rows, shape.cols);        // splitting variable for Hx
    Matrix multiplier = Matrix::Zero(shape.rows, shape.cols);
    double mu = config.mu0;

    SolverReport report;
    Vector x_last = x;
    int iterations = 0;
    double rel = 0.0;
    while (iterations < config.max_inner_iters) {
        ++iterations;
        lift = soft_threshold_singular_values(hx + multiplier / mu, 1.0 / mu);

        const Matrix anchor = lift - multiplier / mu;
        x = config.noisy ? update_x_noisy(anchor, obs, w, mu, config.lambda)
                         : update_x_exact(anchor, obs, w);
        hankelize_into(x, hx);

        multiplier += mu * (hx - lift);
        report.nuclear_norm_trace.push_back(thin_svd(hx).singular_values.sum());

        mu *= config.rho;
        rel = (x - x_last).norm() / std::max(x_last.norm(), 1e-300);
        x_last = x;
        if (rel <= config.inner_tol) break;
    }

    report.stages.push_back({0.0, iterations, rel, (hx - lift).norm()});
    report.recovered = std::move(x);
    report.converged = rel <= config.inner_tol;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hvaf
