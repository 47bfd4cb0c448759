// tmsim — command-line driver for the team-learning dynamics toolkit.
//
// Subcommands:
//   simulate   run one experiment (predict + simulate + compare), write
//              trajectory and summary files
//   predict    write the a-priori limit prediction only, no simulation
//   analyze    communication-class / block-triangular structure of a matrix
//   sweep      batch of experiments over a parameter grid and seed list
//
// Exit codes: 0 success, 1 validation failure, 2 non-convergence when
// --require-convergence is set.

#include <CLI11.hpp>

#include "tmsim/experiment.hpp"
#include "tmsim/graph.hpp"
#include "tmsim/io.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNotConverged = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> max_steps;
    std::optional<double> tol;
    bool require_convergence = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_run_flags) {
    cmd->add_option("--config", opts.config_path, "experiment config file (JSON)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory (default: config or '.')");
    cmd->add_option("--format", opts.format, "trajectory format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "override the config seed");
    if (with_run_flags) {
        cmd->add_option("--max-steps", opts.max_steps, "override stopping.max_steps");
        cmd->add_option("--tol", opts.tol, "override stopping.tol");
        cmd->add_flag("--require-convergence", opts.require_convergence,
                      "exit with code 2 if the run does not converge");
    }
}

tmsim::LoadedConfig load_with_overrides(const CommonOptions& opts) {
    tmsim::LoadedConfig loaded = tmsim::load_config(opts.config_path);
    tmsim::ExperimentConfig& config = loaded.experiment;
    if (opts.seed) {
        if (config.matrices) {
            throw std::invalid_argument(
                "--seed cannot override a config with explicit matrices");
        }
        config.seed = *opts.seed;
    }
    if (opts.max_steps) {
        if (*opts.max_steps < 1) throw std::invalid_argument("--max-steps must be positive");
        config.stopping.max_steps = *opts.max_steps;
    }
    if (opts.tol) {
        if (!(*opts.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
        config.stopping.tol = *opts.tol;
    }
    if (!opts.format.empty()) {
        config.format = opts.format == "json" ? tmsim::OutputFormat::Json
                                              : tmsim::OutputFormat::Csv;
    }
    if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
    if (config.output_dir.empty()) config.output_dir = ".";
    return loaded;
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path path(dir);
    fs::create_directories(path);
    return path;
}

void print_prediction(const tmsim::LimitPrediction& prediction) {
    if (const auto* exact = std::get_if<tmsim::ExactLimit>(&prediction)) {
        std::cout << "prediction: exact limit, alpha = " << tmsim::format_double(exact->alpha)
                  << "\n";
    } else if (const auto* bounds =
                   std::get_if<tmsim::ClassBoundsPrediction>(&prediction)) {
        std::cout << "prediction: per-class bounds (" << bounds->bounds.size()
                  << " classes)\n";
        for (const tmsim::ClassBound& b : bounds->bounds) {
            std::cout << "  class " << b.class_index << " (" << b.members.size()
                      << " members): [" << tmsim::format_double(b.lower) << ", "
                      << tmsim::format_double(b.upper) << "]\n";
        }
    } else {
        std::cout << "prediction: unsupported ("
                  << std::get<tmsim::UnsupportedPrediction>(prediction).reason << ")\n";
    }
}

int cmd_simulate(const CommonOptions& opts) {
    tmsim::LoadedConfig loaded = load_with_overrides(opts);
    const tmsim::ExperimentConfig& config = loaded.experiment;
    auto [summary, trajectory] = tmsim::run_experiment_with_trajectory(config);

    const fs::path out = ensure_out_dir(config.output_dir);
    if (config.format == tmsim::OutputFormat::Csv) {
        tmsim::write_trajectory_csv(trajectory, out / "trajectory.csv");
        tmsim::write_appraisal_csv(trajectory, out / "appraisal.csv");
    } else {
        tmsim::write_trajectory_json(trajectory, out / "trajectory.json");
    }
    tmsim::write_summary_json(summary, config, out / "summary.json");

    std::cout << "regime: " << tmsim::regime_name(summary.regime) << "\n";
    print_prediction(summary.prediction);
    std::cout << "steps: " << summary.steps_taken
              << (summary.converged ? " (converged)" : " (max steps reached)") << "\n";
    if (summary.residuals.expertise) {
        std::cout << "expertise residual: " << tmsim::format_double(*summary.residuals.expertise)
                  << "\n";
    }
    std::cout << "wrote " << (out / "summary.json").string() << "\n";

    if (opts.require_convergence && !summary.converged) return kExitNotConverged;
    return kExitOk;
}

int cmd_predict(const CommonOptions& opts) {
    tmsim::LoadedConfig loaded = load_with_overrides(opts);
    const tmsim::ExperimentConfig& config = loaded.experiment;
    tmsim::ExperimentSummary summary = tmsim::predict_only(config);

    const fs::path out = ensure_out_dir(config.output_dir);
    tmsim::write_summary_json(summary, config, out / "summary.json");

    std::cout << "regime: " << tmsim::regime_name(summary.regime) << "\n";
    print_prediction(summary.prediction);
    std::cout << "wrote " << (out / "summary.json").string() << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& matrix_path, const std::string& config_path,
                const std::string& out_dir) {
    tmsim::Matrix m;
    if (!matrix_path.empty()) {
        m = tmsim::read_matrix_csv(matrix_path);
    } else {
        tmsim::LoadedConfig loaded = tmsim::load_config(config_path);
        if (!loaded.experiment.matrices) {
            throw std::invalid_argument(
                "analyze needs a config with explicit matrices (or use --matrix)");
        }
        m = loaded.experiment.matrices->appraisal;
    }
    if ((m.array() < 0.0).any()) {
        throw std::invalid_argument("analyze: matrix must be nonnegative");
    }

    const tmsim::FrobeniusDecomposition decomp = tmsim::frobenius_form(m);
    const fs::path out = ensure_out_dir(out_dir.empty() ? "." : out_dir);
    tmsim::write_analysis_json(m, decomp, out / "analysis.json");

    std::cout << "nodes: " << m.rows() << "\n";
    std::cout << "irreducible: " << (tmsim::is_irreducible(m) ? "yes" : "no") << "\n";
    std::cout << "classes: " << decomp.class_count() << "\n";
    for (const tmsim::CommunicationClass& cls : decomp.classes) {
        std::cout << "  class " << cls.index << (cls.is_scalar ? " (scalar): " : ": ");
        for (size_t i = 0; i < cls.members.size(); ++i) {
            std::cout << (i ? "," : "") << cls.members[i];
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << (out / "analysis.json").string() << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opts) {
    tmsim::LoadedConfig loaded = load_with_overrides(opts);
    if (!loaded.sweep) {
        throw std::invalid_argument("sweep requires a 'sweep' block in the config");
    }
    const tmsim::ExperimentConfig& base = loaded.experiment;
    const std::vector<tmsim::SweepCell> cells =
        tmsim::batch_sweep(base, loaded.sweep->grid, loaded.sweep->seeds);

    const fs::path out = ensure_out_dir(base.output_dir);
    tmsim::write_sweep_json(cells, base, out / "sweep.json");
    tmsim::write_sweep_csv(cells, out / "sweep.csv");

    size_t failed = 0;
    for (const tmsim::SweepCell& cell : cells) {
        if (!cell.error.empty()) ++failed;
    }
    std::cout << "cells: " << cells.size() << " (" << failed << " failed)\n";
    std::cout << "wrote " << (out / "sweep.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled appraisal/expertise team-learning dynamics toolkit"};
    app.require_subcommand(1);

    CommonOptions simulate_opts;
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one experiment");
    add_common_flags(simulate_cmd, simulate_opts, true);

    CommonOptions predict_opts;
    CLI::App* predict_cmd =
        app.add_subcommand("predict", "compute the limit prediction without simulating");
    add_common_flags(predict_cmd, predict_opts, false);

    std::string analyze_matrix;
    std::string analyze_config;
    std::string analyze_out;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "communication-class structure of a matrix");
    analyze_cmd->add_option("--matrix", analyze_matrix, "matrix CSV file");
    analyze_cmd->add_option("--config", analyze_config,
                            "config file with explicit matrices");
    analyze_cmd->add_option("--out", analyze_out, "output directory");

    CommonOptions sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    add_common_flags(sweep_cmd, sweep_opts, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(simulate_opts);
        if (predict_cmd->parsed()) return cmd_predict(predict_opts);
        if (analyze_cmd->parsed()) {
            if (analyze_matrix.empty() == analyze_config.empty()) {
                throw std::invalid_argument("analyze needs exactly one of --matrix/--config");
            }
            return cmd_analyze(analyze_matrix, analyze_config, analyze_out);
        }
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
