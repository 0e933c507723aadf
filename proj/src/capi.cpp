#include "hvaf.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "esprit.hpp"
#include "experiments.hpp"
#include "lrhm.hpp"
#include "metrics.hpp"
#include "solver.hpp"
#include "svt.hpp"

namespace {

thread_local std::string g_last_error;

hvaf_status fail(hvaf_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

/// Runs fn, translating exceptions into status codes.
template <typename Fn>
hvaf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return HVAF_OK;
    } catch (const hvaf::SpecValidationError& e) {
        return fail(HVAF_ERR_VALIDATION, e.what());
    } catch (const hvaf::IoError& e) {
        return fail(HVAF_ERR_IO, e.what());
    } catch (const hvaf::NumericError& e) {
        return fail(HVAF_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(HVAF_ERR_INVALID_ARGUMENT, e.what());
    }
}

hvaf::Vector to_vector(int32_t n, const double* re, const double* im) {
    hvaf::Vector out(n);
    for (int32_t i = 0; i < n; ++i) out(i) = hvaf::Complex(re[i], im[i]);
    return out;
}

void from_vector(const hvaf::Vector& v, double* re, double* im) {
    for (hvaf::Index i = 0; i < v.size(); ++i) {
        re[i] = v(i).real();
        im[i] = v(i).imag();
    }
}

nlohmann::json report_to_json(const hvaf::SolverReport& report, const std::string& method) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& stage : report.stages) {
        stages.push_back({{"beta", stage.beta},
                          {"iterations", stage.iterations},
                          {"final_relative_change", stage.final_relative_change},
                          {"factorization_residual", stage.factorization_residual}});
    }
    double trace_max = 0.0;
    for (double v : report.multiplier_norm_trace) trace_max = std::max(trace_max, v);
    nlohmann::json j{{"method", method},
                     {"converged", report.converged},
                     {"wall_time_seconds", report.wall_time_seconds},
                     {"stages", stages},
                     {"multiplier_spectral_norm_max", trace_max},
                     {"multiplier_norm_trace", report.multiplier_norm_trace}};
    if (!report.nuclear_norm_trace.empty()) {
        j["nuclear_norm_trace"] = report.nuclear_norm_trace;
    }
    return j;
}

}  // namespace

struct hvaf_solver {
    hvaf::SolverConfig config;
    hvaf::Method method = hvaf::Method::Hvaf;
    std::string report_json;   // empty until a run completes
    bool converged = false;
};

extern "C" {

const char* hvaf_version(void) { return "1.0.0"; }

const char* hvaf_last_error(void) { return g_last_error.c_str(); }

hvaf_status hvaf_synthesize(int32_t ncomp, const double* freq, const double* amp_re,
                            const double* amp_im, const double* damping, int32_t n,
                            double* out_re, double* out_im) {
    return guarded([&] {
        if (ncomp < 1 || !freq || !amp_re || !amp_im || !out_re || !out_im) {
            throw std::invalid_argument("hvaf_synthesize: null array or empty model");
        }
        hvaf::ExponentialModel model;
        for (int32_t r = 0; r < ncomp; ++r) {
            model.components.push_back({freq[r], hvaf::Complex(amp_re[r], amp_im[r]),
                                        damping ? damping[r] : 0.0});
        }
        from_vector(hvaf::synthesize(model, n), out_re, out_im);
    });
}

hvaf_status hvaf_random_model(int32_t ncomp, int damped, double min_separation, uint64_t seed,
                              double* freq, double* amp_re, double* amp_im, double* damping) {
    return guarded([&] {
        if (!freq || !amp_re || !amp_im) {
            throw std::invalid_argument("hvaf_random_model: null output array");
        }
        std::optional<double> separation;
        if (min_separation > 0.0) separation = min_separation;
        const hvaf::ExponentialModel model =
            hvaf::random_model(ncomp, damped != 0, seed, separation);
        for (int32_t r = 0; r < ncomp; ++r) {
            freq[r] = model.components[r].frequency;
            amp_re[r] = model.components[r].amplitude.real();
            amp_im[r] = model.components[r].amplitude.imag();
            if (damping) damping[r] = model.components[r].damping;
        }
    });
}

hvaf_status hvaf_random_mask(int32_t n, int32_t m, uint64_t seed, int32_t* indices) {
    return guarded([&] {
        if (!indices) throw std::invalid_argument("hvaf_random_mask: null output array");
        const hvaf::ObservationSet mask = hvaf::random_mask(n, m, seed);
        for (int32_t i = 0; i < m; ++i) indices[i] = static_cast<int32_t>(mask.indices[i]);
    });
}

hvaf_status hvaf_add_noise(int32_t m, double sigma, uint64_t seed, double* re, double* im) {
    return guarded([&] {
        if (!re || !im) throw std::invalid_argument("hvaf_add_noise: null array");
        hvaf::ObservationSet obs;
        obs.n = m;
        for (int32_t i = 0; i < m; ++i) obs.indices.push_back(i + 1);
        obs.values = to_vector(m, re, im);
        from_vector(hvaf::add_noise(obs, sigma, seed).values, re, im);
    });
}

hvaf_status hvaf_normalize(int32_t n, double* re, double* im) {
    return guarded([&] {
        if (!re || !im) throw std::invalid_argument("hvaf_normalize: null array");
        from_vector(hvaf::peak_normalize(to_vector(n, re, im)), re, im);
    });
}

hvaf_solver* hvaf_solver_create(void) { return new (std::nothrow) hvaf_solver(); }

void hvaf_solver_destroy(hvaf_solver* solver) { delete solver; }

hvaf_status hvaf_solver_set_method(hvaf_solver* solver, const char* method) {
    return guarded([&] {
        if (!solver || !method) throw std::invalid_argument("set_method: null argument");
        if (std::strcmp(method, "hvaf") == 0) {
            solver->method = hvaf::Method::Hvaf;
        } else if (std::strcmp(method, "lrhm") == 0) {
            solver->method = hvaf::Method::Lrhm;
        } else {
            throw std::invalid_argument(std::string("set_method: unknown method \"") + method +
                                        "\" (expected \"hvaf\" or \"lrhm\")");
        }
    });
}

hvaf_status hvaf_solver_set_rank(hvaf_solver* solver, int32_t rank) {
    return guarded([&] {
        if (!solver) throw std::invalid_argument("set_rank: null solver");
        if (rank < 1) throw std::invalid_argument("set_rank: rank must be at least 1");
        solver->config.rank = rank;
    });
}

hvaf_status hvaf_solver_set_noisy(hvaf_solver* solver, int noisy, double lambda) {
    return guarded([&] {
        if (!solver) throw std::invalid_argument("set_noisy: null solver");
        if (noisy && !(lambda > 0.0)) {
            throw std::invalid_argument("set_noisy: lambda must be positive in noisy mode");
        }
        solver->config.noisy = noisy != 0;
        if (noisy) solver->config.lambda = lambda;
    });
}

hvaf_status hvaf_solver_set_continuation(hvaf_solver* solver, double beta0, double beta_max) {
    return guarded([&] {
        if (!solver) throw std::invalid_argument("set_continuation: null solver");
        if (!(beta0 > 0.0) || !(beta_max >= beta0)) {
            throw std::invalid_argument("set_continuation: need 0 < beta0 <= beta_max");
        }
        solver->config.beta0 = beta0;
        solver->config.beta_max = beta_max;
    });
}

hvaf_status hvaf_solver_set_penalty(hvaf_solver* solver, double mu0, double rho) {
    return guarded([&] {
        if (!solver) throw std::invalid_argument("set_penalty: null solver");
        if (!(mu0 > 0.0) || !(rho > 1.0 && rho <= 1.1)) {
            throw std::invalid_argument("set_penalty: need mu0 > 0 and rho in (1, 1.1]");
        }
        solver->config.mu0 = mu0;
        solver->config.rho = rho;
    });
}

hvaf_status hvaf_solver_set_stopping(hvaf_solver* solver, double tol, int32_t max_inner_iters) {
    return guarded([&] {
        if (!solver) throw std::invalid_argument("set_stopping: null solver");
        if (!(tol > 0.0) || max_inner_iters < 1) {
            throw std::invalid_argument("set_stopping: need tol > 0 and max_inner_iters >= 1");
        }
        solver->config.inner_tol = tol;
        solver->config.max_inner_iters = max_inner_iters;
    });
}

hvaf_status hvaf_solver_set_init(hvaf_solver* solver, const char* strategy, uint64_t seed) {
    return guarded([&] {
        if (!solver || !strategy) throw std::invalid_argument("set_init: null argument");
        if (std::strcmp(strategy, "svd") == 0) {
            solver->config.init = hvaf::FactorInit::SvdWarmStart;
        } else if (std::strcmp(strategy, "random") == 0) {
            solver->config.init = hvaf::FactorInit::SeededRandom;
        } else {
            throw std::invalid_argument(std::string("set_init: unknown strategy \"") + strategy +
                                        "\" (expected \"svd\" or \"random\")");
        }
        solver->config.seed = seed;
    });
}

hvaf_status hvaf_solver_run(hvaf_solver* solver, int32_t n, int32_t m, const int32_t* indices,
                            const double* obs_re, const double* obs_im, double* out_re,
                            double* out_im) {
    return guarded([&] {
        if (!solver || !indices || !obs_re || !obs_im || !out_re || !out_im) {
            throw std::invalid_argument("run: null argument");
        }
        hvaf::ObservationSet obs;
        obs.n = n;
        for (int32_t i = 0; i < m; ++i) obs.indices.push_back(indices[i]);
        obs.values = to_vector(m, obs_re, obs_im);
        obs.validate();

        const hvaf::SolverReport report = hvaf::run_method(solver->method, obs, solver->config);
        from_vector(report.recovered, out_re, out_im);
        solver->converged = report.converged;
        solver->report_json =
            report_to_json(report, solver->method == hvaf::Method::Hvaf ? "hvaf" : "lrhm")
                .dump(2);
    });
}

hvaf_status hvaf_solver_run_columns(hvaf_solver* solver, int32_t nrows, int32_t ncols,
                                    const int32_t* mask_offsets, const int32_t* mask_indices,
                                    const double* obs_re, const double* obs_im, double* out_re,
                                    double* out_im) {
    return guarded([&] {
        if (!solver || !mask_offsets || !mask_indices || !obs_re || !obs_im || !out_re ||
            !out_im) {
            throw std::invalid_argument("run_columns: null argument");
        }
        if (nrows < 1 || ncols < 1) {
            throw std::invalid_argument("run_columns: empty matrix");
        }
        hvaf::Matrix data(nrows, ncols);
        for (int32_t j = 0; j < ncols; ++j) {
            for (int32_t i = 0; i < nrows; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * nrows + i;
                data(i, j) = hvaf::Complex(obs_re[k], obs_im[k]);
            }
        }
        std::vector<hvaf::ObservationSet> masks(ncols);
        for (int32_t j = 0; j < ncols; ++j) {
            masks[j].n = nrows;
            for (int32_t k = mask_offsets[j]; k < mask_offsets[j + 1]; ++k) {
                masks[j].indices.push_back(mask_indices[k]);
            }
            masks[j].validate();
        }

        const hvaf::ColumnwiseResult result = hvaf::solve_columns(data, masks, solver->config);
        for (int32_t j = 0; j < ncols; ++j) {
            for (int32_t i = 0; i < nrows; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * nrows + i;
                out_re[k] = result.recovered(i, j).real();
                out_im[k] = result.recovered(i, j).imag();
            }
        }

        nlohmann::json columns = nlohmann::json::array();
        bool all_converged = true;
        for (int32_t j = 0; j < ncols; ++j) {
            nlohmann::json entry;
            entry["column"] = j + 1;
            if (result.column_errors[j].empty()) {
                entry["report"] = report_to_json(result.reports[j], "hvaf");
                all_converged = all_converged && result.reports[j].converged;
            } else {
                entry["error"] = result.column_errors[j];
                all_converged = false;
            }
            columns.push_back(entry);
        }
        solver->converged = all_converged;
        solver->report_json = nlohmann::json{{"method", "hvaf"}, {"columns", columns}}.dump(2);

        if (!result.all_ok()) {
            std::string message = "run_columns: failing columns:";
            for (int32_t j = 0; j < ncols; ++j) {
                if (!result.column_errors[j].empty()) {
                    message += " " + std::to_string(j + 1) + " (" + result.column_errors[j] + ")";
                }
            }
            throw hvaf::NumericError(message);
        }
    });
}

int hvaf_solver_converged(const hvaf_solver* solver) {
    return solver && solver->converged ? 1 : 0;
}

const char* hvaf_solver_report_json(hvaf_solver* solver) {
    if (!solver || solver->report_json.empty()) return nullptr;
    return solver->report_json.c_str();
}

hvaf_status hvaf_estimate(int32_t n, const double* re, const double* im, int32_t rank,
                          double* freq, double* amp_re, double* amp_im, double* damping,
                          int* ill_conditioned) {
    return guarded([&] {
        if (!re || !im || !freq || !amp_re || !amp_im) {
            throw std::invalid_argument("hvaf_estimate: null array");
        }
        const hvaf::EstimationResult result = hvaf::estimate(to_vector(n, re, im), rank);
        for (int32_t r = 0; r < rank; ++r) {
            freq[r] = result.model.components[r].frequency;
            amp_re[r] = result.model.components[r].amplitude.real();
            amp_im[r] = result.model.components[r].amplitude.imag();
            if (damping) damping[r] = result.model.components[r].damping;
        }
        if (ill_conditioned) *ill_conditioned = result.ill_conditioned ? 1 : 0;
    });
}

hvaf_status hvaf_rlne(int32_t n, const double* x_re, const double* x_im, const double* y_re,
                      const double* y_im, double* out) {
    return guarded([&] {
        if (!x_re || !x_im || !y_re || !y_im || !out) {
            throw std::invalid_argument("hvaf_rlne: null array");
        }
        *out = hvaf::rlne(to_vector(n, x_re, x_im), to_vector(n, y_re, y_im));
    });
}

hvaf_status hvaf_experiment_run(const char* spec_json, const char* csv_path,
                                const char* manifest_path) {
    return guarded([&] {
        if (!spec_json || !csv_path || !manifest_path) {
            throw std::invalid_argument("hvaf_experiment_run: null argument");
        }
        nlohmann::json spec;
        try {
            spec = nlohmann::json::parse(spec_json);
        } catch (const nlohmann::json::exception& e) {
            throw hvaf::SpecValidationError(std::string("spec is not valid JSON: ") + e.what(),
                                            {"<root>"});
        }
        const hvaf::ExperimentOutput output = hvaf::run_experiment(spec);
        hvaf::write_experiment_files(output, csv_path, manifest_path);
    });
}

}  // extern "C"
