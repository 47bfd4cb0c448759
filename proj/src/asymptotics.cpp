#include "tmsim/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmsim {

Regime classify_regime(const ModelParams& params) {
    if (params.lambda.size() == 0) {
        throw std::invalid_argument("classify_regime: empty lambda vector");
    }
    if (params.lambda.minCoeff() > 0.0) return Regime::NoStubborn;
    if (params.lambda.maxCoeff() == 0.0) return Regime::AllStubborn;
    return Regime::Mixed;
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::NoStubborn: return "no_stubborn";
        case Regime::AllStubborn: return "all_stubborn";
        case Regime::Mixed: return "mixed";
    }
    return "unknown";
}

EquilibriumReport is_equilibrium(const TeamState& state, const ModelParams& params,
                                 double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("is_equilibrium: tolerance must be positive");
    }
    EquilibriumReport report;
    report.slack_expertise = state.expertise - state.appraisal * state.expertise;

    switch (classify_regime(params)) {
        case Regime::NoStubborn: {
            const Vector share = normalized_expertise(state.expertise);
            double residual = 0.0;
            for (Eigen::Index i = 0; i < state.size(); ++i) {
                for (Eigen::Index j = 0; j < state.size(); ++j) {
                    residual = std::max(residual, std::abs(state.appraisal(i, j) - share[j]));
                }
            }
            report.residual_appraisal = residual;
            report.is_equilibrium =
                residual <= tol && report.slack_expertise.minCoeff() >= -tol;
            break;
        }
        case Regime::AllStubborn: {
            // The appraisal matrix is frozen, so only M y <= y is tested.
            report.residual_appraisal = 0.0;
            report.is_equilibrium = report.slack_expertise.minCoeff() >= -tol;
            break;
        }
        case Regime::Mixed: {
            const StepResult next = step(state, params);
            report.residual_appraisal =
                next.delta.appraisal_change.cwiseAbs().maxCoeff();
            const double expertise_move = next.delta.expertise_change.maxCoeff();
            report.is_equilibrium =
                report.residual_appraisal <= tol && expertise_move <= tol;
            break;
        }
    }
    return report;
}

LimitPrediction predict_limit(const TeamState& state0, const ModelParams& params,
                              const FrobeniusDecomposition* decomp) {
    require_valid(state0, params);
    const Eigen::Index n = state0.size();
    const double alpha = state0.expertise.maxCoeff();

    switch (classify_regime(params)) {
        case Regime::NoStubborn: {
            ExactLimit limit;
            limit.alpha = alpha;
            limit.expertise = Vector::Constant(n, alpha);
            limit.appraisal = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
            return limit;
        }
        case Regime::AllStubborn: {
            if (is_irreducible(state0.appraisal)) {
                ExactLimit limit;
                limit.alpha = alpha;
                limit.expertise = Vector::Constant(n, alpha);
                limit.appraisal = state0.appraisal;
                return limit;
            }
            if (decomp == nullptr) {
                throw std::invalid_argument(
                    "predict_limit: a Frobenius decomposition is required when all agents "
                    "are stubborn and the appraisal matrix is reducible");
            }
            ClassBoundsPrediction prediction;
            prediction.bounds = class_bounds(*decomp, state0.expertise);
            return prediction;
        }
        case Regime::Mixed:
            break;
    }
    return UnsupportedPrediction{"mixed stubbornness: no proven limit to report"};
}

std::vector<ClassBound> class_bounds(const FrobeniusDecomposition& decomp,
                                     const Vector& expertise0) {
    const int k = decomp.class_count();
    if (decomp.node_count() != expertise0.size()) {
        throw std::invalid_argument("class_bounds: decomposition does not match vector size");
    }
    if ((expertise0.array() <= 0.0).any() || (expertise0.array() > 1.0).any()) {
        throw std::invalid_argument("class_bounds: initial expertise must lie in (0,1]");
    }

    std::vector<double> class_alpha(k);
    for (int c = 0; c < k; ++c) {
        double alpha = 0.0;
        for (int v : decomp.classes[c].members) alpha = std::max(alpha, expertise0[v]);
        class_alpha[c] = alpha;
    }

    std::vector<ClassBound> bounds(k);
    for (int i = 0; i < k; ++i) {
        ClassBound& bound = bounds[i];
        bound.class_index = i;
        bound.members = decomp.classes[i].members;
        bound.lower = class_alpha[i];  // self-access always counts
        bound.upper = class_alpha[i];
        for (int j = 0; j < k; ++j) {
            if (!decomp.accessibility[j][i]) continue;
            bound.lower = std::min(bound.lower, class_alpha[j]);
            bound.upper = std::max(bound.upper, class_alpha[j]);
        }
    }
    return bounds;
}

std::vector<double> discounted_share_partial_sums(const std::vector<Vector>& expertise_history,
                                                  double lambda, int agent) {
    if (!(lambda > 0.0) || lambda > 1.0) {
        throw std::invalid_argument("discounted_share_partial_sums: lambda must be in (0,1]");
    }
    if (expertise_history.empty()) {
        throw std::invalid_argument("discounted_share_partial_sums: empty history");
    }
    const Eigen::Index n = expertise_history.front().size();
    if (agent < 0 || agent >= n) {
        throw std::invalid_argument("discounted_share_partial_sums: agent index out of range");
    }

    std::vector<double> sums;
    sums.reserve(expertise_history.size());
    double weight = 1.0;
    double running = 0.0;
    for (const Vector& expertise : expertise_history) {
        if (expertise.size() != n || (expertise.array() <= 0.0).any()) {
            throw std::invalid_argument(
                "discounted_share_partial_sums: history vectors must be positive and of "
                "equal length");
        }
        running += weight * (expertise[agent] / expertise.sum());
        sums.push_back(running);
        weight *= 1.0 - lambda;
    }
    return sums;
}

double discounted_share_bound(double lambda, double initial_l1_mass) {
    if (!(lambda > 0.0) || lambda > 1.0 || !(initial_l1_mass > 0.0)) {
        throw std::invalid_argument("discounted_share_bound: invalid arguments");
    }
    return 1.0 / (lambda * initial_l1_mass);
}

}  // namespace tmsim
