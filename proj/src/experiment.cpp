#include "tmsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>
#include <variant>

namespace tmsim {

namespace {

ExperimentSummary summarize(const ExperimentConfig& config, bool with_simulation,
                            Trajectory* trajectory_out) {
    auto [state0, params] = materialize(config);

    ExperimentSummary summary;
    summary.seed = config.seed;
    summary.regime = classify_regime(params);

    FrobeniusDecomposition decomp;
    const FrobeniusDecomposition* decomp_ptr = nullptr;
    if (summary.regime == Regime::AllStubborn && !is_irreducible(state0.appraisal)) {
        decomp = frobenius_form(state0.appraisal);
        decomp_ptr = &decomp;
    }
    summary.prediction = predict_limit(state0, params, decomp_ptr);

    if (!with_simulation) {
        summary.final_state = state0;
        return summary;
    }

    Trajectory trajectory =
        simulate(state0, params, config.stopping, effective_stride(config));
    summary.converged = trajectory.converged;
    summary.steps_taken = trajectory.steps_taken;
    summary.final_state = trajectory.final_state;

    const TeamState& final_state = trajectory.final_state;
    if (const auto* exact = std::get_if<ExactLimit>(&summary.prediction)) {
        summary.residuals.expertise =
            (final_state.expertise - exact->expertise).cwiseAbs().maxCoeff();
        if (exact->appraisal) {
            summary.residuals.appraisal =
                (final_state.appraisal - *exact->appraisal).cwiseAbs().maxCoeff();
        }
    } else if (const auto* bounds = std::get_if<ClassBoundsPrediction>(&summary.prediction)) {
        std::vector<double> violation;
        violation.reserve(bounds->bounds.size());
        for (const ClassBound& bound : bounds->bounds) {
            double worst = std::numeric_limits<double>::lowest();
            for (int member : bound.members) {
                const double y = final_state.expertise[member];
                worst = std::max(worst, std::max(bound.lower - y, y - bound.upper));
            }
            violation.push_back(worst);
        }
        summary.residuals.class_bound_violation = std::move(violation);
    }

    if (trajectory_out != nullptr) *trajectory_out = std::move(trajectory);
    return summary;
}

}  // namespace

int effective_stride(const ExperimentConfig& config) {
    if (config.stride > 0) return config.stride;
    return config.n_agents <= 50 ? 1 : 10;
}

std::pair<TeamState, ModelParams> materialize(const ExperimentConfig& config) {
    if (config.seed.has_value() == config.matrices.has_value()) {
        throw std::invalid_argument(
            "experiment config must provide exactly one of a seed or explicit matrices");
    }

    if (config.seed) {
        if (config.n_agents < 2) {
            throw std::invalid_argument("n_agents must be at least 2 for seeded generation");
        }
        return random_team(config.n_agents, *config.seed, config.lambda_spec,
                           config.learning_spec);
    }

    TeamState state;
    state.appraisal = config.matrices->appraisal;
    state.expertise = config.matrices->expertise;
    state.time = 0;
    const int n = static_cast<int>(state.expertise.size());
    if (config.n_agents != 0 && config.n_agents != n) {
        throw std::invalid_argument("n_agents does not match the explicit matrices");
    }

    ModelParams params;
    auto fixed_vector = [n](const CoefficientSpec& spec, const char* what) -> Vector {
        switch (spec.mode) {
            case CoefficientSpec::Mode::Explicit:
                return spec.values;
            case CoefficientSpec::Mode::Constant:
                return Vector::Constant(n, spec.value);
            case CoefficientSpec::Mode::AllZero:
                return Vector::Zero(n);
            case CoefficientSpec::Mode::Uniform:
                throw std::invalid_argument(
                    std::string(what) +
                    ": uniform sampling requires a seed-based config; give explicit values");
        }
        throw std::logic_error("unreachable coefficient mode");
    };
    params.lambda = fixed_vector(config.lambda_spec, "lambda_spec");
    params.learning = fixed_vector(config.learning_spec, "learning_spec");

    require_valid(state, params);
    return {std::move(state), std::move(params)};
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
    return summarize(config, /*with_simulation=*/true, nullptr);
}

ExperimentSummary predict_only(const ExperimentConfig& config) {
    return summarize(config, /*with_simulation=*/false, nullptr);
}

std::pair<ExperimentSummary, Trajectory> run_experiment_with_trajectory(
    const ExperimentConfig& config) {
    Trajectory trajectory;
    ExperimentSummary summary = summarize(config, /*with_simulation=*/true, &trajectory);
    return {std::move(summary), std::move(trajectory)};
}

std::vector<SweepCell> batch_sweep(const ExperimentConfig& base, const SweepGrid& grid,
                                   const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) {
        throw std::invalid_argument("batch_sweep: at least one seed is required");
    }

    // An empty dimension contributes a single "inherit" slot.
    const std::vector<std::optional<int>> sizes = grid.team_sizes.empty()
        ? std::vector<std::optional<int>>{std::nullopt}
        : [&] {
              std::vector<std::optional<int>> out;
              for (int v : grid.team_sizes) out.emplace_back(v);
              return out;
          }();
    auto value_axis = [](const std::vector<double>& values) {
        std::vector<std::optional<double>> out;
        if (values.empty()) {
            out.emplace_back(std::nullopt);
        } else {
            for (double v : values) out.emplace_back(v);
        }
        return out;
    };
    const auto lambdas = value_axis(grid.lambda_values);
    const auto learnings = value_axis(grid.learning_values);

    std::vector<SweepCell> cells;
    for (const auto& size : sizes) {
        for (const auto& lambda : lambdas) {
            for (const auto& learning : learnings) {
                for (std::uint64_t seed : seeds) {
                    SweepCell cell;
                    cell.n_agents = size.value_or(base.n_agents);
                    cell.lambda_value = lambda;
                    cell.learning_value = learning;
                    cell.seed = seed;
                    cells.push_back(std::move(cell));
                }
            }
        }
    }

    auto run_cell = [&base](SweepCell& cell) {
        ExperimentConfig config = base;
        config.n_agents = cell.n_agents;
        config.seed = cell.seed;
        config.matrices.reset();
        if (cell.lambda_value) {
            config.lambda_spec = CoefficientSpec::constant(*cell.lambda_value);
        }
        if (cell.learning_value) {
            config.learning_spec = CoefficientSpec::constant(*cell.learning_value);
        }
        try {
            cell.summary = run_experiment(config);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    // Cells are pure functions of their inputs; evaluate them in parallel
    // and keep the deterministic cell order.
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(cells.size()));
    if (workers <= 1 || cells.size() == 1) {
        for (SweepCell& cell : cells) run_cell(cell);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                    run_cell(cells[i]);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return cells;
}

}  // namespace tmsim
