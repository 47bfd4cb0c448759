#ifndef TMSIM_EXPERIMENT_HPP
#define TMSIM_EXPERIMENT_HPP

#include "tmsim/asymptotics.hpp"
#include "tmsim/graph.hpp"
#include "tmsim/simulate.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tmsim {

/// Explicit initial matrices, the alternative to seeded generation.
struct ExplicitInit {
    Matrix appraisal;
    Vector expertise;
};

enum class OutputFormat { Csv, Json };

/// A full experiment description. Exactly one of {seed, matrices} selects
/// the initial state; with a seed, lambda_spec/learning_spec drive the
/// generator, otherwise they must carry explicit vectors (Explicit mode) or
/// constants. stride == 0 means automatic thinning: 1 for teams of up to
/// 50 agents, 10 beyond that.
struct ExperimentConfig {
    int n_agents = 0;
    std::optional<std::uint64_t> seed;
    std::optional<ExplicitInit> matrices;
    CoefficientSpec lambda_spec;
    CoefficientSpec learning_spec;
    StoppingCriterion stopping;
    int stride = 0;
    std::string output_dir;
    OutputFormat format = OutputFormat::Csv;
};

int effective_stride(const ExperimentConfig& config);

/// Builds (state0, params) from a config, either by seeded generation or
/// from the explicit matrices. Throws std::invalid_argument on any
/// validation failure.
std::pair<TeamState, ModelParams> materialize(const ExperimentConfig& config);

/// Gap between a prediction and the simulated endpoint. For an exact-limit
/// prediction the max-norm residuals are reported; for class bounds the
/// per-class signed violation (negative = safely inside the interval).
struct PredictionResiduals {
    std::optional<double> expertise;
    std::optional<double> appraisal;
    std::optional<std::vector<double>> class_bound_violation;
};

struct ExperimentSummary {
    Regime regime = Regime::Mixed;
    LimitPrediction prediction;
    bool converged = false;
    std::int64_t steps_taken = 0;
    TeamState final_state;
    PredictionResiduals residuals;
    std::optional<std::uint64_t> seed;
};

/// Predict, simulate, compare: runs the full pipeline for one config.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// Prediction without simulation (no residuals, no trajectory).
ExperimentSummary predict_only(const ExperimentConfig& config);

/// As run_experiment but also returns the trajectory, for serialization.
std::pair<ExperimentSummary, Trajectory> run_experiment_with_trajectory(
    const ExperimentConfig& config);

/// Grid dimensions swept over a base config; an empty dimension inherits
/// the base value. lambda/learning values become Constant specs.
struct SweepGrid {
    std::vector<int> team_sizes;
    std::vector<double> lambda_values;
    std::vector<double> learning_values;
};

struct SweepCell {
    int n_agents = 0;
    std::optional<double> lambda_value;
    std::optional<double> learning_value;
    std::uint64_t seed = 0;
    std::optional<ExperimentSummary> summary;
    std::string error;  // empty on success
};

/// One run_experiment per (grid point, seed). Cells are independent and
/// evaluated concurrently; the result order is the deterministic nesting
/// (team size, lambda, learning, seed) regardless of scheduling. Per-cell
/// failures are recorded in the cell, never aborting the sweep.
std::vector<SweepCell> batch_sweep(const ExperimentConfig& base, const SweepGrid& grid,
                                   const std::vector<std::uint64_t>& seeds);

}  // namespace tmsim

#endif
