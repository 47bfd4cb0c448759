#include "tmsim/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tmsim {

namespace {

bool finite_entries(const Matrix& m) {
    return m.allFinite();
}

}  // namespace

ValidationReport validate_initial(const TeamState& state, const ModelParams& params) {
    ValidationReport report;
    auto add = [&report](Violation::Kind kind, int index, std::string message) {
        report.push_back(Violation{kind, index, std::move(message)});
    };

    const Eigen::Index n = state.expertise.size();
    if (n < 2) {
        add(Violation::Kind::Dimension, -1,
            "team size must be at least 2, got " + std::to_string(n));
        return report;
    }
    if (state.appraisal.rows() != n || state.appraisal.cols() != n) {
        std::ostringstream os;
        os << "appraisal must be " << n << "x" << n << ", got " << state.appraisal.rows()
           << "x" << state.appraisal.cols();
        add(Violation::Kind::Dimension, -1, os.str());
        return report;
    }
    if (params.lambda.size() != n || params.learning.size() != n) {
        std::ostringstream os;
        os << "coefficient vectors must have length " << n << ", got lambda "
           << params.lambda.size() << ", learning " << params.learning.size();
        add(Violation::Kind::Dimension, -1, os.str());
        return report;
    }
    if (!finite_entries(state.appraisal) || !state.expertise.allFinite() ||
        !params.lambda.allFinite() || !params.learning.allFinite()) {
        add(Violation::Kind::Dimension, -1, "non-finite entry in state or parameters");
        return report;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        const double y = state.expertise[i];
        if (!(y > 0.0) || y > 1.0) {
            std::ostringstream os;
            os << "expertise not in (0,1]: agent " << i << " has value " << y;
            add(Violation::Kind::ExpertiseRange, static_cast<int>(i), os.str());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double m = state.appraisal(i, j);
            if (m < 0.0) {
                std::ostringstream os;
                os << "appraisal entry (" << i << "," << j << ") is negative: " << m;
                add(Violation::Kind::NegativeEntry, static_cast<int>(i), os.str());
            }
            row_sum += m;
        }
        if (std::abs(row_sum - 1.0) > kRowSumTolerance) {
            std::ostringstream os;
            os << "row not stochastic: row " << i << " sums to " << row_sum
               << " (must be within " << kRowSumTolerance << " of 1)";
            add(Violation::Kind::RowNotStochastic, static_cast<int>(i), os.str());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double l = params.lambda[i];
        if (l < 0.0 || l > 1.0) {
            std::ostringstream os;
            os << "lambda not in [0,1]: agent " << i << " has value " << l;
            add(Violation::Kind::LambdaRange, static_cast<int>(i), os.str());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double l = params.learning[i];
        if (!(l > 0.0) || l > 1.0) {
            std::ostringstream os;
            os << "learning coefficient not in (0,1]: agent " << i << " has value " << l;
            add(Violation::Kind::LearningRange, static_cast<int>(i), os.str());
        }
    }
    return report;
}

void require_valid(const TeamState& state, const ModelParams& params) {
    const ValidationReport report = validate_initial(state, params);
    if (report.empty()) return;
    std::ostringstream os;
    os << "invalid team state/parameters:";
    for (const Violation& v : report) os << "\n  - " << v.message;
    throw std::invalid_argument(os.str());
}

Matrix appraisal_step(const TeamState& state, const ModelParams& params) {
    const Eigen::Index n = state.size();
    const double total = state.expertise.sum();
    if (!(total > 0.0)) {
        throw std::invalid_argument("appraisal_step: expertise vector has no positive mass");
    }

    Matrix next(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = params.lambda[i];
        if (lambda == 0.0) {
            next.row(i) = state.appraisal.row(i);  // stubborn row, frozen bitwise
            continue;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            next(i, j) = (1.0 - lambda) * state.appraisal(i, j) +
                         lambda * (state.expertise[j] / total);
        }
    }
    return next;
}

Vector expertise_step(const TeamState& state, const ModelParams& params) {
    const Vector perceived = state.appraisal * state.expertise;
    Vector next = state.expertise;
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        const double gap = perceived[i] - state.expertise[i];
        if (gap > 0.0) next[i] += params.learning[i] * gap;
    }
    return next;
}

StepResult step(const TeamState& state, const ModelParams& params) {
    StepResult result;
    result.state.appraisal = appraisal_step(state, params);
    result.state.expertise = expertise_step(state, params);
    result.state.time = state.time + 1;

    result.delta.appraisal_change = result.state.appraisal - state.appraisal;
    result.delta.expertise_change = result.state.expertise - state.expertise;
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        if (result.delta.expertise_change[i] > 0.0) {
            result.delta.active_agents.push_back(static_cast<int>(i));
        }
    }
    return result;
}

Vector normalized_expertise(const Vector& expertise) {
    if (expertise.size() == 0 || (expertise.array() <= 0.0).any()) {
        throw std::invalid_argument("normalized_expertise: vector must be strictly positive");
    }
    return expertise / expertise.sum();
}

}  // namespace tmsim
