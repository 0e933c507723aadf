#ifndef HVAF_EXPERIMENTS_HPP
#define HVAF_EXPERIMENTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "esprit.hpp"
#include "lrhm.hpp"
#include "metrics.hpp"
#include "solver.hpp"

namespace hvaf {

enum class Method { Hvaf, Lrhm };

SolverReport run_method(Method method, const ObservationSet& obs, const SolverConfig& config);

/// Experiment spec failed schema validation; lists the offending fields.
class SpecValidationError : public std::invalid_argument {
public:
    SpecValidationError(const std::string& message, std::vector<std::string> fields)
        : std::invalid_argument(message), fields_(std::move(fields)) {}
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Success-rate map over (number of exponentials, number of measurements).
/// Every trial draws a fresh model and mask from a seed derived from the
/// cell coordinates and trial index, runs the solver with rank matched to
/// the cell's R, and counts recoveries with relative error at most 1e-3.
struct PhaseGridSpec {
    Index n = 127;
    std::vector<int> r_values;
    std::vector<int> m_values;
    int trials = 20;
    bool damped = false;
    std::optional<double> separation;
    Method solver = Method::Hvaf;
    SolverConfig config;
    std::uint64_t seed = 0;
    int threads = 0;   // 0: HVAF_THREADS env var, then hardware concurrency
};

struct PhaseCell {
    int r = 0;
    int m = 0;
    int trials = 0;
    int successes = 0;
    double rate() const { return trials > 0 ? double(successes) / trials : 0.0; }
};

std::vector<PhaseCell> phase_transition(const PhaseGridSpec& spec);

/// Success rate versus the preset rank, with the true model order fixed.
/// The same signals and masks are reused across rank values.
struct RankSweepSpec {
    Index n = 127;
    int true_order = 20;
    int m = 80;
    std::vector<int> rank_values;
    int trials = 10;
    bool damped = false;
    SolverConfig config;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct RankSweepPoint {
    int rank = 0;
    int trials = 0;
    int successes = 0;
    double rate() const { return trials > 0 ? double(successes) / trials : 0.0; }
};

std::vector<RankSweepPoint> rank_sweep(const RankSweepSpec& spec);

/// Recover-then-estimate benchmark: per measurement count, the fraction of
/// trials whose ESPRIT estimate of the recovered signal passes the paired
/// frequency/amplitude criterion. Frequencies and dampings of the base model
/// are held fixed; amplitudes are redrawn per trial from the ensemble unless
/// resample_amplitudes is cleared.
struct EstimationBenchmarkSpec {
    Index n = 127;
    ExponentialModel base_model;
    bool resample_amplitudes = true;
    std::vector<int> m_values;
    int trials = 10;
    SolverConfig config;   // rank is forced to the model order
    std::uint64_t seed = 0;
    int threads = 0;
};

struct EstimationBenchmarkPoint {
    int m = 0;
    int trials = 0;
    int successes = 0;
    double rate() const { return trials > 0 ? double(successes) / trials : 0.0; }
};

std::vector<EstimationBenchmarkPoint> estimation_benchmark(const EstimationBenchmarkSpec& spec);

/// Two-tone frequency-identifiability probe: recovery error and the
/// estimated two-component model per (separation, measurement count) cell.
/// The signal is left unnormalized so estimated amplitudes are directly
/// comparable to the configured ones.
struct IdentifiabilitySpec {
    Index n = 127;
    double base_frequency = 0.3;
    double first_amplitude = 0.51;
    double second_amplitude = 0.66;
    std::vector<double> separations;
    std::vector<int> m_values;
    SolverConfig config;   // rank is forced to 2
    std::uint64_t seed = 0;
};

struct IdentifiabilityRow {
    double separation = 0.0;
    int m = 0;
    double rlne_value = 0.0;
    ExponentialModel estimated;   // two components, sorted by frequency
};

std::vector<IdentifiabilityRow> identifiability_probe(const IdentifiabilitySpec& spec);

/// Mean reconstruction error as one tunable sweeps, per noise level.
/// Protocol constants: lambda sweeps run at beta0 = 32, mu0 = 0.05; beta0 and
/// mu0 sweeps pick lambda from the noise level (200, 500, 1000 for 10, 15,
/// 20 dB) and hold the other knob at its protocol value. Noise level 0 runs
/// the exact-constraint mode. Trials are matched across swept values.
enum class SweepParameter { Lambda, Beta0, Mu0 };

struct SensitivitySpec {
    Index n = 127;
    int model_order = 5;
    int m = 64;
    SweepParameter parameter = SweepParameter::Lambda;
    std::vector<double> values;
    std::vector<double> noise_levels;   // sigma; SNR = -20 log10(sigma)
    int trials = 10;
    SolverConfig config;   // rank is forced to the model order
    std::uint64_t seed = 0;
    int threads = 0;
};

struct SensitivityRow {
    SweepParameter parameter = SweepParameter::Lambda;
    double value = 0.0;
    double sigma = 0.0;
    int trials = 0;
    double mean_rlne = 0.0;
};

std::vector<SensitivityRow> sensitivity_sweep(const SensitivitySpec& spec);

/// Matched-seed column-wise recovery comparison on synthetic damped
/// matrices: per seed, both methods recover the same partially sampled
/// matrix column by column and the full-matrix errors are reported.
struct ColumnwiseBenchmarkSpec {
    Index rows = 63;
    Index cols = 8;
    int model_order = 3;
    double sampling_rate = 0.4;
    int seeds = 10;
    SolverConfig config;   // rank is forced to the model order; noisy mode
    std::uint64_t seed = 0;
};

struct ColumnwiseBenchmarkRow {
    int seed_index = 0;
    double hvaf_rlne = 0.0;
    double lrhm_rlne = 0.0;
};

std::vector<ColumnwiseBenchmarkRow> columnwise_benchmark(const ColumnwiseBenchmarkSpec& spec);

/// JSON-driven entry point: parses and validates a spec (the "kind" field
/// selects the experiment), runs it, and returns the frozen CSV text plus a
/// manifest echoing the spec, the seed and the per-cell summaries. A manifest
/// produced by an earlier run is itself accepted as a spec.
struct ExperimentOutput {
    std::string csv;
    nlohmann::json manifest;
};

ExperimentOutput run_experiment(const nlohmann::json& spec);

/// Writes the CSV and manifest files; throws IoError on failure.
void write_experiment_files(const ExperimentOutput& output, const std::string& csv_path,
                            const std::string& manifest_path);

nlohmann::json model_to_json(const ExponentialModel& model);
ExponentialModel model_from_json(const nlohmann::json& j);

}  // namespace hvaf

#endif
