#ifndef TMSIM_ASYMPTOTICS_HPP
#define TMSIM_ASYMPTOTICS_HPP

#include "tmsim/graph.hpp"
#include "tmsim/model.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tmsim {

/// Stubbornness regime, a pure function of the lambda vector.
enum class Regime { NoStubborn, AllStubborn, Mixed };

Regime classify_regime(const ModelParams& params);

const char* regime_name(Regime regime);

/// Exact asymptotic limit: expertise converges to alpha * ones with
/// alpha = max_i y_i(0); the limit appraisal matrix is the uniform matrix
/// when no agent is stubborn, and the frozen initial matrix when all agents
/// are stubborn and the influence graph is strongly connected.
struct ExactLimit {
    std::optional<Matrix> appraisal;
    Vector expertise;
    double alpha = 0.0;
};

/// Per-class [lower, upper] bounds on the expertise limit in the
/// all-stubborn reducible case: both ends are extrema of the per-class
/// initial maxima over the classes with access to this one (self included).
struct ClassBound {
    int class_index = 0;
    std::vector<int> members;
    double lower = 0.0;
    double upper = 0.0;
};

struct ClassBoundsPrediction {
    std::vector<ClassBound> bounds;
};

struct UnsupportedPrediction {
    std::string reason;
};

using LimitPrediction = std::variant<ExactLimit, ClassBoundsPrediction, UnsupportedPrediction>;

/// Fixed-point diagnostics. residual_appraisal is the max-norm distance of
/// M from its stationary target (0 when all agents are stubborn, where the
/// appraisal matrix is frozen and only the expertise condition applies);
/// slack_expertise is y - M y componentwise, nonnegative at a fixed point.
struct EquilibriumReport {
    bool is_equilibrium = false;
    double residual_appraisal = 0.0;
    Vector slack_expertise;
};

/// Tests whether (M, y) is a fixed point of the dynamics at tolerance tol.
/// With no stubborn agents this uses the reduced stationarity conditions
/// M = 1 y^T / |y|_1 and M y <= y, which are equivalent to the raw
/// fixed-point equations because the coefficient matrices are nonsingular.
/// In the mixed regime the step is applied directly and compared.
EquilibriumReport is_equilibrium(const TeamState& state, const ModelParams& params,
                                 double tol);

/// Predicts the asymptotic limit before simulating. `decomp` is only
/// consulted in the all-stubborn reducible branch, where it is required.
/// The mixed regime yields an UnsupportedPrediction.
LimitPrediction predict_limit(const TeamState& state0, const ModelParams& params,
                              const FrobeniusDecomposition* decomp = nullptr);

/// Per-class limit bounds from the initial expertise: for each class i,
/// alpha_i is the largest initial expertise among its members and the
/// bounds are min/max of alpha_j over every class j with access to i.
std::vector<ClassBound> class_bounds(const FrobeniusDecomposition& decomp,
                                     const Vector& expertise0);

/// Partial sums S_T = sum_{t=0..T} (1-lambda)^t * y_j(t) / |y(t)|_1 of the
/// prejudice-discounted expertise-share series that drives each appraisal
/// entry toward its limit. The sequence is nondecreasing and bounded by
/// discounted_share_bound(lambda, |y(0)|_1).
std::vector<double> discounted_share_partial_sums(const std::vector<Vector>& expertise_history,
                                                  double lambda, int agent);

/// 1 / (lambda * initial_l1_mass): geometric-series bound on the partial
/// sums above.
double discounted_share_bound(double lambda, double initial_l1_mass);

}  // namespace tmsim

#endif
