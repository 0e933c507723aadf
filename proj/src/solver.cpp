#include "solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rng.hpp"
#include "svt.hpp"

namespace hvaf {

void SolverConfig::validate() const {
    if (rank < 1) throw std::invalid_argument("SolverConfig: rank must be at least 1");
    if (!(beta0 > 0.0)) throw std::invalid_argument("SolverConfig: beta0 must be positive");
    if (!(beta_max >= beta0)) throw std::invalid_argument("SolverConfig: beta_max must be >= beta0");
    if (!(mu0 > 0.0)) throw std::invalid_argument("SolverConfig: mu0 must be positive");
    if (!(rho > 1.0 && rho <= 1.1)) throw std::invalid_argument("SolverConfig: rho must be in (1, 1.1]");
    if (noisy && !(lambda > 0.0)) throw std::invalid_argument("SolverConfig: lambda must be positive in noisy mode");
    if (!(inner_tol > 0.0)) throw std::invalid_argument("SolverConfig: inner_tol must be positive");
    if (max_inner_iters < 1) throw std::invalid_argument("SolverConfig: max_inner_iters must be at least 1");
}

std::pair<Matrix, Matrix> init_factors(const ObservationSet& obs, HankelShape shape, int rank,
                                       FactorInit strategy, std::uint64_t seed) {
    obs.validate();
    if (!obs.has_values()) {
        throw std::invalid_argument("init_factors: observation set has no values");
    }
    if (rank < 1 || rank > std::min(shape.rows, shape.cols)) {
        throw std::invalid_argument("init_factors: rank " + std::to_string(rank) +
                                    " exceeds min(" + std::to_string(shape.rows) + ", " +
                                    std::to_string(shape.cols) + ")");
    }
    if (strategy == FactorInit::SvdWarmStart) {
        const Svd svd = thin_svd(hankelize(obs.zero_filled(), shape));
        const RealVector root = svd.singular_values.head(rank).cwiseSqrt();
        Matrix u = svd.u.leftCols(rank) * root.asDiagonal();
        Matrix v = svd.vh.topRows(rank).transpose() * root.asDiagonal();
        return {std::move(u), std::move(v)};
    }
    Rng rng(seed);
    const double scale =
        obs.values.norm() / std::sqrt(static_cast<double>(shape.signal_length() * rank));
    Matrix u(shape.rows, rank);
    Matrix v(shape.cols, rank);
    for (Index j = 0; j < rank; ++j)
        for (Index i = 0; i < shape.rows; ++i) u(i, j) = scale * rng.complex_normal();
    for (Index j = 0; j < rank; ++j)
        for (Index i = 0; i < shape.cols; ++i) v(i, j) = scale * rng.complex_normal();
    return {std::move(u), std::move(v)};
}

Matrix update_factor(const Matrix& hx_side, const Matrix& companion,
                     const std::vector<Matrix>& aux, const std::vector<Matrix>& mult, double mu,
                     double beta, const RealVector& col_weights) {
    const Index np = hx_side.rows();
    const Index rank = companion.cols();
    if (static_cast<Index>(aux.size()) != rank || static_cast<Index>(mult.size()) != rank ||
        col_weights.size() != np) {
        throw std::invalid_argument("update_factor: inconsistent shapes");
    }

    Matrix rhs(np, rank);
    for (Index r = 0; r < rank; ++r) {
        rhs.col(r) = hankel_adjoint(mu * aux[r] - mult[r]);
    }
    rhs.noalias() += beta * (hx_side * companion.conjugate());

    // Transposing each row equation gives the Hermitian positive definite
    // system (mu w_p I + beta P^H P) u = rhs_(p,:)^T; rows sharing an
    // anti-diagonal weight share one Cholesky factorization.
    const Matrix gram = companion.adjoint() * companion;
    std::map<double, std::vector<Index>> buckets;
    for (Index p = 0; p < np; ++p) buckets[col_weights(p)].push_back(p);

    Matrix solution(np, rank);
    Matrix system(rank, rank);
    for (const auto& [weight, rows] : buckets) {
        system = beta * gram;
        system.diagonal().array() += mu * weight;
        const Eigen::LLT<Matrix> llt(system);
        Matrix stacked(rank, static_cast<Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            stacked.col(static_cast<Index>(i)) = rhs.row(rows[i]).transpose();
        }
        stacked = llt.solve(stacked);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            solution.row(rows[i]) = stacked.col(static_cast<Index>(i)).transpose();
        }
    }
    return solution;
}

Vector update_x_exact(const Matrix& uvt, const ObservationSet& obs, const RealVector& w) {
    Vector x = hankel_adjoint(uvt);
    x.array() /= w.array();
    for (Index i = 0; i < obs.sample_count(); ++i) {
        x(obs.indices[i] - 1) = obs.values(i);
    }
    return x;
}

Vector update_x_noisy(const Matrix& uvt, const ObservationSet& obs, const RealVector& w,
                      double beta, double lambda) {
    if (!(beta > 0.0)) throw std::invalid_argument("update_x_noisy: beta must be positive");
    if (lambda < 0.0) throw std::invalid_argument("update_x_noisy: lambda must be nonnegative");
    const Vector adj = hankel_adjoint(uvt);
    Vector x = adj.array() / w.array();
    for (Index i = 0; i < obs.sample_count(); ++i) {
        const Index k = obs.indices[i] - 1;
        x(k) = (beta * adj(k) + lambda * obs.values(i)) / (beta * w(k) + lambda);
    }
    return x;
}

namespace {

double advance_side(const Matrix& factor, std::vector<Matrix>& aux, std::vector<Matrix>& mult,
                    double mu, HankelShape inner) {
    double max_norm = 0.0;
    Matrix target(inner.rows, inner.cols);
    for (std::size_t r = 0; r < aux.size(); ++r) {
        hankelize_into(factor.col(static_cast<Index>(r)), target);
        target += mult[r] / mu;
        Svd svd = thin_svd(target);
        const RealVector kept = (svd.singular_values.array() - 1.0 / mu).max(0.0);
        aux[r] = svd.u * kept.asDiagonal() * svd.vh;
        // mult + mu (lift - aux) collapses to A min(mu s, 1) B^H on the SVD of
        // the prox input; the product form keeps the spectral bound exact even
        // when mu is large.
        const RealVector clamped = (mu * svd.singular_values.array()).min(1.0);
        mult[r] = svd.u * clamped.asDiagonal() * svd.vh;
        if (clamped.size() > 0) max_norm = std::max(max_norm, clamped(0));
    }
    return max_norm;
}

}  // namespace

double update_auxiliaries_and_multipliers(AdmmState& state) {
    const HankelShape u_inner = default_square_shape(state.u.rows());
    const HankelShape v_inner = default_square_shape(state.v.rows());
    const double du = advance_side(state.u, state.b, state.d, state.mu, u_inner);
    const double dv = advance_side(state.v, state.c, state.m, state.mu, v_inner);
    return std::max(du, dv);
}

SolverReport solve(const ObservationSet& obs, const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    obs.validate();
    if (obs.sample_count() < 1 || !obs.has_values()) {
        throw std::invalid_argument("solve: need at least one observed sample");
    }

    const Index n = obs.n;
    const HankelShape shape = default_square_shape(n);
    const RealVector w = antidiag_weights(shape);
    const HankelShape u_inner = default_square_shape(shape.rows);
    const HankelShape v_inner = default_square_shape(shape.cols);
    const RealVector w_u = antidiag_weights(u_inner);
    const RealVector w_v = antidiag_weights(v_inner);
    const int rank = config.rank;

    AdmmState st;
    st.x = obs.zero_filled();
    std::tie(st.u, st.v) = init_factors(obs, shape, rank, config.init, config.seed);
    st.b.resize(rank);
    st.c.resize(rank);
    st.d.assign(rank, Matrix::Zero(u_inner.rows, u_inner.cols));
    st.m.assign(rank, Matrix::Zero(v_inner.rows, v_inner.cols));
    for (int r = 0; r < rank; ++r) {
        st.b[r] = hankelize(st.u.col(r), u_inner);
        st.c[r] = hankelize(st.v.col(r), v_inner);
    }
    st.mu = config.mu0;
    st.beta = config.beta0;

    SolverReport report;
    Vector x_last = st.x;
    Matrix hx = hankelize(st.x, shape);
    Matrix uvt(shape.rows, shape.cols);

    while (st.beta <= config.beta_max) {
        int iterations = 0;
        double rel = 0.0;
        while (iterations < config.max_inner_iters) {
            ++iterations;
            st.u = update_factor(hx, st.v, st.b, st.d, st.mu, st.beta, w_u);
            st.v = update_factor(hx.transpose(), st.u, st.c, st.m, st.mu, st.beta, w_v);
            uvt.noalias() = st.u * st.v.transpose();
            st.x = config.noisy ? update_x_noisy(uvt, obs, w, st.beta, config.lambda)
                                : update_x_exact(uvt, obs, w);
            report.multiplier_norm_trace.push_back(update_auxiliaries_and_multipliers(st));
            st.mu *= config.rho;
            hankelize_into(st.x, hx);
            rel = (st.x - x_last).norm() / std::max(x_last.norm(), 1e-300);
            x_last = st.x;
            if (rel <= config.inner_tol) break;
        }
        report.stages.push_back({st.beta, iterations, rel, (hx - uvt).norm()});
        st.beta *= 2.0;
        if (config.reset_mu_each_stage) st.mu = config.mu0;
    }

    report.recovered = std::move(st.x);
    report.converged =
        !report.stages.empty() && report.stages.back().final_relative_change <= config.inner_tol;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

bool ColumnwiseResult::all_ok() const {
    return std::all_of(column_errors.begin(), column_errors.end(),
                       [](const std::string& e) { return e.empty(); });
}

ColumnwiseResult solve_columns(const Matrix& data, const std::vector<ObservationSet>& masks,
                               const SolverConfig& config) {
    if (static_cast<Index>(masks.size()) != data.cols()) {
        throw std::invalid_argument("solve_columns: need one mask per column");
    }
    SolverConfig column_config = config;
    column_config.noisy = true;

    ColumnwiseResult result;
    result.recovered = Matrix::Zero(data.rows(), data.cols());
    result.reports.resize(masks.size());
    result.column_errors.assign(masks.size(), std::string());
    for (Index j = 0; j < data.cols(); ++j) {
        try {
            const ObservationSet obs =
                masks[j].has_values() ? masks[j] : observe(data.col(j), masks[j]);
            result.reports[j] = solve(obs, column_config);
            result.recovered.col(j) = result.reports[j].recovered;
        } catch (const std::exception& e) {
            result.column_errors[j] = e.what();
        }
    }
    return result;
}

}  // namespace hvaf
