#ifndef TMSIM_MODEL_HPP
#define TMSIM_MODEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace tmsim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row sums of a user-supplied appraisal matrix may deviate from 1 by this
/// much (text formats round); everything else is checked strictly.
inline constexpr double kRowSumTolerance = 1e-9;

/// Per-agent coefficients of the coupled dynamics.
///
/// `lambda[i]` in [0,1] weights how strongly agent i's appraisals stay
/// anchored to the initial prejudice (0 = fully stubborn, appraisal row
/// frozen; 1 = no anchoring). `learning[i]` in (0,1] is the rate at which
/// agent i closes the gap to its perceived team-average expertise.
struct ModelParams {
    Vector lambda;
    Vector learning;

    Eigen::Index size() const { return lambda.size(); }
};

/// Full dynamical state of a team at one time step: the row-stochastic
/// appraisal matrix (entry (i,j) = share of the task agent i would assign
/// to agent j) and the expertise vector with entries in (0,1].
struct TeamState {
    Matrix appraisal;
    Vector expertise;
    std::int64_t time = 0;

    Eigen::Index size() const { return expertise.size(); }
};

/// Diagnostic decomposition of one step. active_agents holds exactly the
/// indices whose expertise strictly increased.
struct StepDelta {
    Matrix appraisal_change;
    Vector expertise_change;
    std::vector<int> active_agents;
};

struct StepResult {
    TeamState state;
    StepDelta delta;
};

struct Violation {
    enum class Kind {
        Dimension,
        ExpertiseRange,
        RowNotStochastic,
        NegativeEntry,
        LambdaRange,
        LearningRange,
    };
    Kind kind;
    int index;  // offending agent/row, -1 when not applicable
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Gatekeeper for initial conditions and parameters. Returns an empty
/// report iff expertise is in (0,1]^N, the appraisal matrix is nonnegative
/// with row sums within kRowSumTolerance of 1, coefficient ranges hold and
/// all dimensions agree (N >= 2).
ValidationReport validate_initial(const TeamState& state, const ModelParams& params);

/// Throws std::invalid_argument listing every violation if the report is
/// non-empty.
void require_valid(const TeamState& state, const ModelParams& params);

/// One synchronous appraisal update: each row of the result is the convex
/// combination (1 - lambda_i) * row_i + lambda_i * y^T / |y|_1, evaluated
/// entirely at time t. Rows with lambda_i == 0 are copied bitwise.
Matrix appraisal_step(const TeamState& state, const ModelParams& params);

/// One synchronous expertise update: y + L * max(M y - y, 0), componentwise
/// clamp, evaluated entirely at time t (the time-t appraisal matrix, never
/// the freshly updated one). Entries never decrease and the maximum entry
/// is stationary.
Vector expertise_step(const TeamState& state, const ModelParams& params);

/// One full synchronous step of the coupled dynamics: both sub-updates read
/// time-t values. Returns the advanced state together with the per-step
/// delta diagnostics.
StepResult step(const TeamState& state, const ModelParams& params);

/// y / |y|_1; requires y strictly positive.
Vector normalized_expertise(const Vector& expertise);

}  // namespace tmsim

#endif
