#ifndef TMSIM_SIMULATE_HPP
#define TMSIM_SIMULATE_HPP

#include "tmsim/model.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace tmsim {

/// A run halts once both the expertise and the appraisal max-norm step
/// deltas stay below tol for `window` consecutive steps, or after
/// max_steps. The window guards against false positives on plateaus of the
/// clamped update.
struct StoppingCriterion {
    std::int64_t max_steps = 100000;
    double tol = 1e-10;
    int window = 10;
};

struct Trajectory {
    std::vector<TeamState> snapshots;  // strictly increasing in time
    bool converged = false;
    std::int64_t steps_taken = 0;
    TeamState final_state;
};

/// Repeatedly applies the coupled step from state0. Snapshots keep t = 0,
/// every stride-th state and always the final one; thinning never affects
/// the final state or the converged flag. Hitting max_steps without
/// convergence is reported, not an error.
Trajectory simulate(const TeamState& state0, const ModelParams& params,
                    const StoppingCriterion& stop, int stride = 1);

/// How a coefficient vector is produced. Uniform draws each entry from
/// (0,1]; AllZero is only meaningful for the prejudice-anchoring vector.
struct CoefficientSpec {
    enum class Mode { Uniform, AllZero, Constant, Explicit };
    Mode mode = Mode::Uniform;
    double value = 0.0;     // Constant
    Vector values;          // Explicit

    static CoefficientSpec uniform() { return {}; }
    static CoefficientSpec all_zero() { return {Mode::AllZero, 0.0, {}}; }
    static CoefficientSpec constant(double v) { return {Mode::Constant, v, {}}; }
    static CoefficientSpec explicit_values(Vector v) {
        return {Mode::Explicit, 0.0, std::move(v)};
    }
};

/// Deterministic seeded team generation: expertise uniform in (1e-6, 1]
/// (the guard keeps strict positivity numerically meaningful), appraisal
/// rows entrywise uniform on [0,1] then normalized to sum 1 (all-zero rows
/// are re-sampled), coefficients per spec. The result always passes
/// validate_initial.
std::pair<TeamState, ModelParams> random_team(int n_agents, std::uint64_t seed,
                                              const CoefficientSpec& lambda_spec,
                                              const CoefficientSpec& learning_spec);

/// Uniform double in [0,1) from the top 53 bits of the generator, so
/// streams do not depend on the standard library's distribution
/// implementation.
double uniform_unit(std::mt19937_64& rng);

}  // namespace tmsim

#endif
