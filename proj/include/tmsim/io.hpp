#ifndef TMSIM_IO_HPP
#define TMSIM_IO_HPP

#include "tmsim/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tmsim {

/// Sweep request attached to a config file.
struct SweepSpec {
    SweepGrid grid;
    std::vector<std::uint64_t> seeds;
};

struct LoadedConfig {
    ExperimentConfig experiment;
    std::optional<SweepSpec> sweep;
};

/// Parses and validates a JSON experiment config. Defaults: stopping
/// {max_steps 100000, tol 1e-10, window 10}, uniform coefficient sampling,
/// automatic snapshot stride, csv output. Throws std::invalid_argument
/// naming every offending field and the violated bound; unknown keys are
/// rejected.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config(const std::string& text);

/// Serializes a config back to its JSON document form (the summary echo).
std::string config_to_json(const ExperimentConfig& config);

// Long-format trajectory CSV, one row per (snapshot, agent):
//   t,agent,expertise
void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

// Companion appraisal CSV, one row per (snapshot, i, j):
//   t,i,j,appraisal
void write_appraisal_csv(const Trajectory& trajectory, const std::filesystem::path& path);

/// Full snapshots plus convergence metadata; numbers survive a write/read
/// round trip bit for bit.
void write_trajectory_json(const Trajectory& trajectory, const std::filesystem::path& path);
Trajectory read_trajectory_json(const std::filesystem::path& path);

void write_summary_json(const ExperimentSummary& summary, const ExperimentConfig& config,
                        const std::filesystem::path& path);

void write_sweep_json(const std::vector<SweepCell>& cells, const ExperimentConfig& base,
                      const std::filesystem::path& path);

// Flat sweep table, one row per cell:
//   cell,n_agents,lambda,learning,seed,regime,variant,alpha,
//   expertise_residual,appraisal_residual,max_bound_violation,
//   steps_taken,converged,error
void write_sweep_csv(const std::vector<SweepCell>& cells, const std::filesystem::path& path);

/// Square nonnegative matrix from a CSV of comma-separated rows (for the
/// structure-analysis command).
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Frobenius decomposition + irreducibility report as JSON.
void write_analysis_json(const Matrix& m, const FrobeniusDecomposition& decomp,
                         const std::filesystem::path& path);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace tmsim

#endif
