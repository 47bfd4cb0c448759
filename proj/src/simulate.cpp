#include "tmsim/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace tmsim {

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vector& a, const Vector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

constexpr double kExpertiseFloor = 1e-6;

Vector draw_coefficients(const CoefficientSpec& spec, int n, std::mt19937_64& rng,
                         bool allow_zero, const char* what) {
    switch (spec.mode) {
        case CoefficientSpec::Mode::Uniform: {
            Vector out(n);
            for (int i = 0; i < n; ++i) out[i] = 1.0 - uniform_unit(rng);  // (0,1]
            return out;
        }
        case CoefficientSpec::Mode::AllZero:
            if (!allow_zero) {
                throw std::invalid_argument(std::string(what) +
                                            ": all-zero mode is not allowed here");
            }
            return Vector::Zero(n);
        case CoefficientSpec::Mode::Constant: {
            const bool lo_ok = allow_zero ? spec.value >= 0.0 : spec.value > 0.0;
            if (!lo_ok || spec.value > 1.0) {
                throw std::invalid_argument(std::string(what) + ": constant " +
                                            std::to_string(spec.value) + " out of range");
            }
            return Vector::Constant(n, spec.value);
        }
        case CoefficientSpec::Mode::Explicit:
            if (spec.values.size() != static_cast<Eigen::Index>(n)) {
                throw std::invalid_argument(std::string(what) +
                                            ": explicit vector length does not match team size");
            }
            return spec.values;
    }
    throw std::logic_error("unreachable coefficient mode");
}

}  // namespace

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Trajectory simulate(const TeamState& state0, const ModelParams& params,
                    const StoppingCriterion& stop, int stride) {
    require_valid(state0, params);
    if (stop.max_steps < 1 || !(stop.tol > 0.0) || stop.window < 1 || stride < 1) {
        throw std::invalid_argument("simulate: invalid stopping criterion or stride");
    }

    Trajectory trajectory;
    trajectory.snapshots.push_back(state0);

    TeamState current = state0;
    int consecutive_small = 0;
    std::int64_t steps = 0;
    while (steps < stop.max_steps) {
        StepResult next = step(current, params);
        ++steps;

        const double delta_m = max_abs_diff(next.state.appraisal, current.appraisal);
        const double delta_y = max_abs_diff(next.state.expertise, current.expertise);
        if (delta_m < stop.tol && delta_y < stop.tol) {
            ++consecutive_small;
        } else {
            consecutive_small = 0;
        }

        current = std::move(next.state);
        if (steps % stride == 0) trajectory.snapshots.push_back(current);

        if (consecutive_small >= stop.window) {
            trajectory.converged = true;
            break;
        }
    }

    trajectory.steps_taken = steps;
    trajectory.final_state = current;
    if (trajectory.snapshots.back().time != current.time) {
        trajectory.snapshots.push_back(current);
    }
    return trajectory;
}

std::pair<TeamState, ModelParams> random_team(int n_agents, std::uint64_t seed,
                                              const CoefficientSpec& lambda_spec,
                                              const CoefficientSpec& learning_spec) {
    if (n_agents < 2) {
        throw std::invalid_argument("random_team: need at least 2 agents");
    }
    std::mt19937_64 rng(seed);
    const int n = n_agents;

    TeamState state;
    state.time = 0;
    state.expertise.resize(n);
    for (int i = 0; i < n; ++i) {
        state.expertise[i] =
            kExpertiseFloor + (1.0 - kExpertiseFloor) * (1.0 - uniform_unit(rng));
    }

    state.appraisal.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        do {
            row_sum = 0.0;
            for (int j = 0; j < n; ++j) {
                state.appraisal(i, j) = uniform_unit(rng);
                row_sum += state.appraisal(i, j);
            }
        } while (row_sum == 0.0);
        for (int j = 0; j < n; ++j) state.appraisal(i, j) /= row_sum;
    }

    ModelParams params;
    params.lambda = draw_coefficients(lambda_spec, n, rng, /*allow_zero=*/true, "lambda");
    params.learning =
        draw_coefficients(learning_spec, n, rng, /*allow_zero=*/false, "learning");

    require_valid(state, params);
    return {std::move(state), std::move(params)};
}

}  // namespace tmsim
