#include "experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "rng.hpp"

namespace hvaf {

SolverReport run_method(Method method, const ObservationSet& obs, const SolverConfig& config) {
    return method == Method::Hvaf ? solve(obs, config) : solve_lrhm(obs, config);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HVAF_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Redraw amplitudes from the ensemble, keeping frequencies and dampings.
ExponentialModel with_ensemble_amplitudes(const ExponentialModel& base, Rng& rng) {
    ExponentialModel model = base;
    for (auto& comp : model.components) {
        const double magnitude = 1.0 + std::pow(10.0, 0.5 * rng.uniform());
        const double phase = 2.0 * 3.141592653589793238462643383279502884 * rng.uniform();
        comp.amplitude = std::polar(magnitude, phase);
    }
    return model;
}

/// The per-noise-level data weight of the sensitivity protocol.
double lambda_for_noise(double sigma, double fallback) {
    const auto matches = [sigma](double target) { return std::abs(sigma - target) < 1e-9; };
    if (matches(std::pow(10.0, -0.5))) return 200.0;    // 10 dB
    if (matches(std::pow(10.0, -0.75))) return 500.0;   // 15 dB
    if (matches(std::pow(10.0, -1.0))) return 1000.0;   // 20 dB
    return fallback;
}

}  // namespace

std::vector<PhaseCell> phase_transition(const PhaseGridSpec& spec) {
    if (spec.r_values.empty() || spec.m_values.empty() || spec.trials < 1 || spec.n < 1) {
        throw std::invalid_argument("phase_transition: empty grid or invalid trial count");
    }
    struct Task {
        int r, m, trial;
    };
    std::vector<Task> tasks;
    for (int r : spec.r_values)
        for (int m : spec.m_values)
            for (int t = 0; t < spec.trials; ++t) tasks.push_back({r, m, t});

    std::vector<char> outcome(tasks.size(), 0);
    parallel_for(static_cast<int>(tasks.size()), resolve_threads(spec.threads), [&](int i) {
        const Task& task = tasks[i];
        const std::uint64_t trial_seed =
            mix_seed({spec.seed, std::uint64_t(task.r), std::uint64_t(task.m), std::uint64_t(task.trial)});
        try {
            const ExponentialModel model =
                random_model(task.r, spec.damped, trial_seed, spec.separation);
            const Vector y = peak_normalize(synthesize(model, spec.n));
            const ObservationSet obs =
                observe(y, random_mask(spec.n, task.m, mix_seed({trial_seed, 1})));
            SolverConfig config = spec.config;
            config.rank = task.r;
            const SolverReport report = run_method(spec.solver, obs, config);
            outcome[i] = recovery_success(report.recovered, y) ? 1 : 0;
        } catch (const std::exception& e) {
            std::cerr << "phase_transition: trial (R=" << task.r << ", M=" << task.m << ", t="
                      << task.trial << ") failed: " << e.what() << "\n";
        }
    });

    std::vector<PhaseCell> cells;
    std::size_t cursor = 0;
    for (int r : spec.r_values) {
        for (int m : spec.m_values) {
            PhaseCell cell{r, m, spec.trials, 0};
            for (int t = 0; t < spec.trials; ++t) cell.successes += outcome[cursor++];
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<RankSweepPoint> rank_sweep(const RankSweepSpec& spec) {
    if (spec.rank_values.empty() || spec.trials < 1 || spec.true_order < 1) {
        throw std::invalid_argument("rank_sweep: invalid spec");
    }
    const int ranks = static_cast<int>(spec.rank_values.size());
    std::vector<char> outcome(static_cast<std::size_t>(ranks) * spec.trials, 0);
    parallel_for(ranks * spec.trials, resolve_threads(spec.threads), [&](int i) {
        const int rank_index = i / spec.trials;
        const int trial = i % spec.trials;
        const std::uint64_t trial_seed = mix_seed({spec.seed, std::uint64_t(trial)});
        try {
            const ExponentialModel model = random_model(spec.true_order, spec.damped, trial_seed);
            const Vector y = peak_normalize(synthesize(model, spec.n));
            const ObservationSet obs =
                observe(y, random_mask(spec.n, spec.m, mix_seed({trial_seed, 1})));
            SolverConfig config = spec.config;
            config.rank = spec.rank_values[rank_index];
            const SolverReport report = solve(obs, config);
            outcome[i] = recovery_success(report.recovered, y) ? 1 : 0;
        } catch (const std::exception& e) {
            std::cerr << "rank_sweep: trial (rank=" << spec.rank_values[rank_index] << ", t="
                      << trial << ") failed: " << e.what() << "\n";
        }
    });

    std::vector<RankSweepPoint> points;
    for (int k = 0; k < ranks; ++k) {
        RankSweepPoint point{spec.rank_values[k], spec.trials, 0};
        for (int t = 0; t < spec.trials; ++t) point.successes += outcome[k * spec.trials + t];
        points.push_back(point);
    }
    return points;
}

std::vector<EstimationBenchmarkPoint> estimation_benchmark(const EstimationBenchmarkSpec& spec) {
    if (spec.base_model.components.empty() || spec.m_values.empty() || spec.trials < 1) {
        throw std::invalid_argument("estimation_benchmark: invalid spec");
    }
    const int m_count = static_cast<int>(spec.m_values.size());
    const int order = spec.base_model.order();
    std::vector<char> outcome(static_cast<std::size_t>(m_count) * spec.trials, 0);
    parallel_for(m_count * spec.trials, resolve_threads(spec.threads), [&](int i) {
        const int m_index = i / spec.trials;
        const int trial = i % spec.trials;
        const int m = spec.m_values[m_index];
        const std::uint64_t trial_seed = mix_seed({spec.seed, std::uint64_t(m), std::uint64_t(trial)});
        try {
            Rng rng(trial_seed);
            ExponentialModel truth = spec.resample_amplitudes
                                         ? with_ensemble_amplitudes(spec.base_model, rng)
                                         : spec.base_model;
            const Vector raw = synthesize(truth, spec.n);
            const double peak = raw.cwiseAbs().maxCoeff();
            const Vector y = raw / peak;
            for (auto& comp : truth.components) comp.amplitude /= peak;

            const ObservationSet obs = observe(y, random_mask(spec.n, m, mix_seed({trial_seed, 1})));
            SolverConfig config = spec.config;
            config.rank = order;
            const SolverReport report = solve(obs, config);
            const EstimationResult est = estimate(report.recovered, order);
            outcome[i] = estimation_success(truth, est.model) ? 1 : 0;
        } catch (const std::exception& e) {
            std::cerr << "estimation_benchmark: trial (M=" << m << ", t=" << trial
                      << ") failed: " << e.what() << "\n";
        }
    });

    std::vector<EstimationBenchmarkPoint> points;
    for (int k = 0; k < m_count; ++k) {
        EstimationBenchmarkPoint point{spec.m_values[k], spec.trials, 0};
        for (int t = 0; t < spec.trials; ++t) point.successes += outcome[k * spec.trials + t];
        points.push_back(point);
    }
    return points;
}

std::vector<IdentifiabilityRow> identifiability_probe(const IdentifiabilitySpec& spec) {
    if (spec.separations.empty() || spec.m_values.empty()) {
        throw std::invalid_argument("identifiability_probe: invalid spec");
    }
    std::vector<IdentifiabilityRow> rows;
    for (std::size_t si = 0; si < spec.separations.size(); ++si) {
        const double separation = spec.separations[si];
        for (int m : spec.m_values) {
            ExponentialModel model;
            model.components = {
                {spec.base_frequency, Complex(spec.first_amplitude, 0.0), 0.0},
                {spec.base_frequency + separation, Complex(spec.second_amplitude, 0.0), 0.0},
            };
            const Vector y = synthesize(model, spec.n);
            const ObservationSet obs =
                observe(y, random_mask(spec.n, m, mix_seed({spec.seed, si, std::uint64_t(m)})));
            SolverConfig config = spec.config;
            config.rank = 2;
            const SolverReport report = solve(obs, config);

            IdentifiabilityRow row;
            row.separation = separation;
            row.m = m;
            row.rlne_value = rlne(report.recovered, y);
            row.estimated = estimate(report.recovered, 2).model;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SensitivityRow> sensitivity_sweep(const SensitivitySpec& spec) {
    if (spec.values.empty() || spec.noise_levels.empty() || spec.trials < 1) {
        throw std::invalid_argument("sensitivity_sweep: invalid spec");
    }
    struct Task {
        std::size_t value_index, sigma_index;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t v = 0; v < spec.values.size(); ++v)
        for (std::size_t s = 0; s < spec.noise_levels.size(); ++s)
            for (int t = 0; t < spec.trials; ++t) tasks.push_back({v, s, t});

    std::vector<double> errors(tasks.size(), 0.0);
    parallel_for(static_cast<int>(tasks.size()), resolve_threads(spec.threads), [&](int i) {
        const Task& task = tasks[i];
        const double sigma = spec.noise_levels[task.sigma_index];
        const double value = spec.values[task.value_index];
        // Matched trials: the signal, mask and noise depend only on the noise
        // level and trial index, never on the swept value.
        const std::uint64_t trial_seed =
            mix_seed({spec.seed, task.sigma_index, std::uint64_t(task.trial)});
        const ExponentialModel model = random_model(spec.model_order, false, trial_seed);
        const Vector y = peak_normalize(synthesize(model, spec.n));
        ObservationSet obs = observe(y, random_mask(spec.n, spec.m, mix_seed({trial_seed, 1})));

        SolverConfig config = spec.config;
        config.rank = spec.model_order;
        config.beta0 = 32.0;
        config.mu0 = 0.05;
        config.lambda = lambda_for_noise(sigma, spec.config.lambda);
        switch (spec.parameter) {
            case SweepParameter::Lambda: config.lambda = value; break;
            case SweepParameter::Beta0: config.beta0 = value; break;
            case SweepParameter::Mu0: config.mu0 = value; break;
        }
        if (sigma > 0.0) {
            obs = add_noise(obs, sigma, mix_seed({trial_seed, 2}));
            config.noisy = true;
        } else {
            config.noisy = false;
        }
        const SolverReport report = solve(obs, config);
        errors[i] = rlne(report.recovered, y);
    });

    std::vector<SensitivityRow> rows;
    std::size_t cursor = 0;
    for (std::size_t v = 0; v < spec.values.size(); ++v) {
        for (std::size_t s = 0; s < spec.noise_levels.size(); ++s) {
            SensitivityRow row;
            row.parameter = spec.parameter;
            row.value = spec.values[v];
            row.sigma = spec.noise_levels[s];
            row.trials = spec.trials;
            double sum = 0.0;
            for (int t = 0; t < spec.trials; ++t) sum += errors[cursor++];
            row.mean_rlne = sum / spec.trials;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<ColumnwiseBenchmarkRow> columnwise_benchmark(const ColumnwiseBenchmarkSpec& spec) {
    if (spec.seeds < 1 || spec.rows < 3 || spec.cols < 1 || spec.sampling_rate <= 0.0 ||
        spec.sampling_rate > 1.0) {
        throw std::invalid_argument("columnwise_benchmark: invalid spec");
    }
    const Index samples_per_column =
        std::max<Index>(1, static_cast<Index>(std::lround(spec.sampling_rate * spec.rows)));

    std::vector<ColumnwiseBenchmarkRow> rows;
    for (int i = 0; i < spec.seeds; ++i) {
        const std::uint64_t matrix_seed = mix_seed({spec.seed, std::uint64_t(i)});
        Matrix truth(spec.rows, spec.cols);
        for (Index j = 0; j < spec.cols; ++j) {
            const ExponentialModel model =
                random_model(spec.model_order, true, mix_seed({matrix_seed, std::uint64_t(j)}));
            truth.col(j) = synthesize(model, spec.rows);
        }
        truth /= truth.cwiseAbs().maxCoeff();

        std::vector<ObservationSet> masks;
        for (Index j = 0; j < spec.cols; ++j) {
            masks.push_back(random_mask(spec.rows, samples_per_column,
                                        mix_seed({matrix_seed, std::uint64_t(j), 1})));
        }

        SolverConfig config = spec.config;
        config.rank = spec.model_order;
        config.noisy = true;
        const ColumnwiseResult hvaf_result = solve_columns(truth, masks, config);

        SolverConfig lrhm_config = config;
        lrhm_config.max_inner_iters = std::max(config.max_inner_iters, 2000);
        Matrix lrhm_recovered(spec.rows, spec.cols);
        for (Index j = 0; j < spec.cols; ++j) {
            lrhm_recovered.col(j) = solve_lrhm(observe(truth.col(j), masks[j]), lrhm_config).recovered;
        }

        rows.push_back({i, rlne(hvaf_result.recovered, truth), rlne(lrhm_recovered, truth)});
    }
    return rows;
}

// --------------------------------------------------------------------------
// JSON bridge
// --------------------------------------------------------------------------

nlohmann::json model_to_json(const ExponentialModel& model) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& comp : model.components) {
        arr.push_back({{"f", comp.frequency},
                       {"c_re", comp.amplitude.real()},
                       {"c_im", comp.amplitude.imag()},
                       {"tau", comp.damping}});
    }
    return arr;
}

ExponentialModel model_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) {
        throw SpecValidationError("model must be a non-empty array of components", {"model"});
    }
    ExponentialModel model;
    for (const auto& item : j) {
        ExponentialComponent comp;
        comp.frequency = item.at("f").get<double>();
        comp.amplitude = Complex(item.value("c_re", 0.0), item.value("c_im", 0.0));
        comp.damping = item.value("tau", 0.0);
        model.components.push_back(comp);
    }
    return model;
}

namespace {

SolverConfig config_from_json(const nlohmann::json& j, std::vector<std::string>& bad_fields) {
    SolverConfig config;
    if (!j.is_object()) {
        bad_fields.push_back("config");
        return config;
    }
    config.rank = j.value("rank", config.rank);
    config.beta0 = j.value("beta0", config.beta0);
    config.beta_max = j.value("beta_max", config.beta_max);
    config.mu0 = j.value("mu0", config.mu0);
    config.rho = j.value("rho", config.rho);
    config.noisy = j.value("noisy", config.noisy);
    config.lambda = j.value("lambda", config.lambda);
    config.inner_tol = j.value("inner_tol", config.inner_tol);
    config.max_inner_iters = j.value("max_inner_iters", config.max_inner_iters);
    config.seed = j.value("seed", config.seed);
    config.reset_mu_each_stage = j.value("reset_mu_each_stage", config.reset_mu_each_stage);
    const std::string init = j.value("init", std::string("svd"));
    if (init == "svd") {
        config.init = FactorInit::SvdWarmStart;
    } else if (init == "random") {
        config.init = FactorInit::SeededRandom;
    } else {
        bad_fields.push_back("config.init");
    }
    try {
        config.validate();
    } catch (const std::exception&) {
        bad_fields.push_back("config");
    }
    return config;
}

nlohmann::json config_to_json(const SolverConfig& config) {
    return {{"rank", config.rank},
            {"beta0", config.beta0},
            {"beta_max", config.beta_max},
            {"mu0", config.mu0},
            {"rho", config.rho},
            {"noisy", config.noisy},
            {"lambda", config.lambda},
            {"inner_tol", config.inner_tol},
            {"max_inner_iters", config.max_inner_iters},
            {"init", config.init == FactorInit::SvdWarmStart ? "svd" : "random"},
            {"seed", config.seed},
            {"reset_mu_each_stage", config.reset_mu_each_stage}};
}

template <typename T>
std::vector<T> list_from_json(const nlohmann::json& j, const char* field,
                              std::vector<std::string>& bad_fields) {
    std::vector<T> out;
    if (!j.contains(field) || !j[field].is_array() || j[field].empty()) {
        bad_fields.push_back(field);
        return out;
    }
    for (const auto& item : j[field]) {
        if (!item.is_number()) {
            bad_fields.push_back(field);
            return {};
        }
        out.push_back(item.get<T>());
    }
    return out;
}

const char* sweep_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::Lambda: return "lambda";
        case SweepParameter::Beta0: return "beta0";
        case SweepParameter::Mu0: return "mu0";
    }
    return "lambda";
}

}  // namespace

ExperimentOutput run_experiment(const nlohmann::json& raw_spec) {
    // A manifest embeds the spec it was produced from; accept either form.
    const nlohmann::json& spec_json =
        raw_spec.contains("spec") && raw_spec["spec"].is_object() ? raw_spec["spec"] : raw_spec;

    std::vector<std::string> bad;
    if (!spec_json.is_object() || !spec_json.contains("kind") || !spec_json["kind"].is_string()) {
        throw SpecValidationError("experiment spec needs a string \"kind\" field", {"kind"});
    }
    const std::string kind = spec_json["kind"].get<std::string>();
    const std::uint64_t seed = spec_json.value("seed", 0ULL);
    const int trials = spec_json.value("trials", 0);
    const int threads = spec_json.value("threads", 0);
    SolverConfig config = config_from_json(spec_json.value("config", nlohmann::json::object()), bad);

    const auto fail_if_invalid = [&]() {
        if (!bad.empty()) {
            std::string message = "experiment spec invalid; offending fields:";
            for (const auto& f : bad) message += " " + f;
            throw SpecValidationError(message, bad);
        }
    };

    ExperimentOutput out;
    nlohmann::json echo;
    echo["kind"] = kind;
    echo["seed"] = seed;
    echo["threads"] = threads;
    echo["config"] = config_to_json(config);
    nlohmann::json results = nlohmann::json::array();
    std::string csv;

    if (kind == "phase_transition") {
        PhaseGridSpec spec;
        spec.n = spec_json.value("n", 127);
        spec.r_values = list_from_json<int>(spec_json, "R_values", bad);
        spec.m_values = list_from_json<int>(spec_json, "M_values", bad);
        spec.trials = trials > 0 ? trials : 20;
        spec.damped = spec_json.value("damped", false);
        if (spec_json.contains("separation") && !spec_json["separation"].is_null()) {
            if (!spec_json["separation"].is_number()) {
                bad.push_back("separation");
            } else {
                spec.separation = spec_json["separation"].get<double>();
            }
        }
        const std::string solver = spec_json.value("solver", std::string("hvaf"));
        if (solver == "hvaf") {
            spec.solver = Method::Hvaf;
        } else if (solver == "lrhm") {
            spec.solver = Method::Lrhm;
        } else {
            bad.push_back("solver");
        }
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;
        spec.threads = threads;

        echo["n"] = spec.n;
        echo["R_values"] = spec.r_values;
        echo["M_values"] = spec.m_values;
        echo["trials"] = spec.trials;
        echo["damped"] = spec.damped;
        echo["separation"] = spec.separation ? nlohmann::json(*spec.separation) : nlohmann::json();
        echo["solver"] = solver;

        csv = "R,M,trials,successes,success_rate\n";
        for (const PhaseCell& cell : phase_transition(spec)) {
            csv += std::to_string(cell.r) + "," + std::to_string(cell.m) + "," +
                   std::to_string(cell.trials) + "," + std::to_string(cell.successes) + "," +
                   fmt(cell.rate()) + "\n";
            results.push_back({{"R", cell.r},
                               {"M", cell.m},
                               {"trials", cell.trials},
                               {"successes", cell.successes},
                               {"success_rate", cell.rate()}});
        }
    } else if (kind == "rank_sweep") {
        RankSweepSpec spec;
        spec.n = spec_json.value("n", 127);
        spec.true_order = spec_json.value("true_order", 20);
        spec.m = spec_json.value("M", 80);
        spec.rank_values = list_from_json<int>(spec_json, "rank_values", bad);
        spec.trials = trials > 0 ? trials : 10;
        spec.damped = spec_json.value("damped", false);
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;
        spec.threads = threads;

        echo["n"] = spec.n;
        echo["true_order"] = spec.true_order;
        echo["M"] = spec.m;
        echo["rank_values"] = spec.rank_values;
        echo["trials"] = spec.trials;
        echo["damped"] = spec.damped;

        csv = "rank,trials,successes,success_rate\n";
        for (const RankSweepPoint& point : rank_sweep(spec)) {
            csv += std::to_string(point.rank) + "," + std::to_string(point.trials) + "," +
                   std::to_string(point.successes) + "," + fmt(point.rate()) + "\n";
            results.push_back({{"rank", point.rank},
                               {"trials", point.trials},
                               {"successes", point.successes},
                               {"success_rate", point.rate()}});
        }
    } else if (kind == "estimation_benchmark") {
        EstimationBenchmarkSpec spec;
        spec.n = spec_json.value("n", 127);
        if (!spec_json.contains("model")) {
            bad.push_back("model");
        } else {
            try {
                spec.base_model = model_from_json(spec_json["model"]);
            } catch (const SpecValidationError&) {
                bad.push_back("model");
            }
        }
        spec.resample_amplitudes = spec_json.value("resample_amplitudes", true);
        spec.m_values = list_from_json<int>(spec_json, "M_values", bad);
        spec.trials = trials > 0 ? trials : 10;
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;
        spec.threads = threads;

        echo["n"] = spec.n;
        echo["model"] = model_to_json(spec.base_model);
        echo["resample_amplitudes"] = spec.resample_amplitudes;
        echo["M_values"] = spec.m_values;
        echo["trials"] = spec.trials;

        csv = "M,trials,successes,success_rate\n";
        for (const EstimationBenchmarkPoint& point : estimation_benchmark(spec)) {
            csv += std::to_string(point.m) + "," + std::to_string(point.trials) + "," +
                   std::to_string(point.successes) + "," + fmt(point.rate()) + "\n";
            results.push_back({{"M", point.m},
                               {"trials", point.trials},
                               {"successes", point.successes},
                               {"success_rate", point.rate()}});
        }
    } else if (kind == "identifiability") {
        IdentifiabilitySpec spec;
        spec.n = spec_json.value("n", 127);
        spec.base_frequency = spec_json.value("base_frequency", 0.3);
        spec.first_amplitude = spec_json.value("first_amplitude", 0.51);
        spec.second_amplitude = spec_json.value("second_amplitude", 0.66);
        spec.separations = list_from_json<double>(spec_json, "separations", bad);
        spec.m_values = list_from_json<int>(spec_json, "M_values", bad);
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;

        echo["n"] = spec.n;
        echo["base_frequency"] = spec.base_frequency;
        echo["first_amplitude"] = spec.first_amplitude;
        echo["second_amplitude"] = spec.second_amplitude;
        echo["separations"] = spec.separations;
        echo["M_values"] = spec.m_values;

        csv = "separation,M,rlne,f_hat_1,amp_hat_1,f_hat_2,amp_hat_2\n";
        for (const IdentifiabilityRow& row : identifiability_probe(spec)) {
            const auto& c = row.estimated.components;
            csv += fmt(row.separation) + "," + std::to_string(row.m) + "," + fmt(row.rlne_value) +
                   "," + fmt(c[0].frequency) + "," + fmt(std::abs(c[0].amplitude)) + "," +
                   fmt(c[1].frequency) + "," + fmt(std::abs(c[1].amplitude)) + "\n";
            results.push_back({{"separation", row.separation},
                               {"M", row.m},
                               {"rlne", row.rlne_value},
                               {"estimated", model_to_json(row.estimated)}});
        }
    } else if (kind == "sensitivity") {
        SensitivitySpec spec;
        spec.n = spec_json.value("n", 127);
        spec.model_order = spec_json.value("order", 5);
        spec.m = spec_json.value("M", 64);
        const std::string parameter = spec_json.value("parameter", std::string(""));
        if (parameter == "lambda") {
            spec.parameter = SweepParameter::Lambda;
        } else if (parameter == "beta0" || parameter == "beta") {
            spec.parameter = SweepParameter::Beta0;
        } else if (parameter == "mu0") {
            spec.parameter = SweepParameter::Mu0;
        } else {
            bad.push_back("parameter");
        }
        spec.values = list_from_json<double>(spec_json, "values", bad);
        spec.noise_levels = list_from_json<double>(spec_json, "noise_levels", bad);
        spec.trials = trials > 0 ? trials : 10;
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;
        spec.threads = threads;

        echo["n"] = spec.n;
        echo["order"] = spec.model_order;
        echo["M"] = spec.m;
        echo["parameter"] = parameter;
        echo["values"] = spec.values;
        echo["noise_levels"] = spec.noise_levels;
        echo["trials"] = spec.trials;

        csv = "parameter,value,sigma,trials,mean_rlne\n";
        for (const SensitivityRow& row : sensitivity_sweep(spec)) {
            csv += std::string(sweep_name(row.parameter)) + "," + fmt(row.value) + "," +
                   fmt(row.sigma) + "," + std::to_string(row.trials) + "," + fmt(row.mean_rlne) +
                   "\n";
            results.push_back({{"parameter", sweep_name(row.parameter)},
                               {"value", row.value},
                               {"sigma", row.sigma},
                               {"trials", row.trials},
                               {"mean_rlne", row.mean_rlne}});
        }
    } else if (kind == "columnwise_benchmark") {
        ColumnwiseBenchmarkSpec spec;
        spec.rows = spec_json.value("rows", 63);
        spec.cols = spec_json.value("cols", 8);
        spec.model_order = spec_json.value("order", 3);
        spec.sampling_rate = spec_json.value("sampling_rate", 0.4);
        spec.seeds = spec_json.value("seeds", 10);
        fail_if_invalid();
        spec.config = config;
        spec.seed = seed;

        echo["rows"] = spec.rows;
        echo["cols"] = spec.cols;
        echo["order"] = spec.model_order;
        echo["sampling_rate"] = spec.sampling_rate;
        echo["seeds"] = spec.seeds;

        csv = "seed_index,hvaf_rlne,lrhm_rlne\n";
        for (const ColumnwiseBenchmarkRow& row : columnwise_benchmark(spec)) {
            csv += std::to_string(row.seed_index) + "," + fmt(row.hvaf_rlne) + "," +
                   fmt(row.lrhm_rlne) + "\n";
            results.push_back({{"seed_index", row.seed_index},
                               {"hvaf_rlne", row.hvaf_rlne},
                               {"lrhm_rlne", row.lrhm_rlne}});
        }
    } else {
        throw SpecValidationError("unknown experiment kind \"" + kind + "\"", {"kind"});
    }

    out.csv = std::move(csv);
    out.manifest = {{"spec", echo}, {"results", results}};
    return out;
}

void write_experiment_files(const ExperimentOutput& output, const std::string& csv_path,
                            const std::string& manifest_path) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw IoError("cannot open " + csv_path + " for writing");
    csv << output.csv;
    if (!csv.good()) throw IoError("failed writing " + csv_path);

    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw IoError("cannot open " + manifest_path + " for writing");
    manifest << output.manifest.dump(2) << "\n";
    if (!manifest.good()) throw IoError("failed writing " + manifest_path);
}

}  // namespace hvaf
