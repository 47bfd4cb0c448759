#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tmsim/asymptotics.hpp"
#include "tmsim/experiment.hpp"
#include "tmsim/graph.hpp"
#include "tmsim/io.hpp"
#include "tmsim/model.hpp"
#include "tmsim/simulate.hpp"

namespace py = pybind11;
using namespace tmsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coupled appraisal/expertise team-learning dynamics";

    // --- model types and step laws ---
    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init([](Vector lambda, Vector learning) {
                 return ModelParams{std::move(lambda), std::move(learning)};
             }),
             py::arg("lambda_"), py::arg("learning"))
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("learning", &ModelParams::learning)
        .def("__len__", &ModelParams::size);

    py::class_<TeamState>(m, "TeamState")
        .def(py::init<>())
        .def(py::init([](Matrix appraisal, Vector expertise, std::int64_t time) {
                 return TeamState{std::move(appraisal), std::move(expertise), time};
             }),
             py::arg("appraisal"), py::arg("expertise"), py::arg("time") = 0)
        .def_readwrite("appraisal", &TeamState::appraisal)
        .def_readwrite("expertise", &TeamState::expertise)
        .def_readwrite("time", &TeamState::time)
        .def("__len__", &TeamState::size);

    py::class_<StepDelta>(m, "StepDelta")
        .def_readonly("appraisal_change", &StepDelta::appraisal_change)
        .def_readonly("expertise_change", &StepDelta::expertise_change)
        .def_readonly("active_agents", &StepDelta::active_agents);

    py::class_<StepResult>(m, "StepResult")
        .def_readonly("state", &StepResult::state)
        .def_readonly("delta", &StepResult::delta);

    py::class_<Violation> violation(m, "Violation");
    violation
        .def_readonly("index", &Violation::index)
        .def_readonly("message", &Violation::message)
        .def_property_readonly("kind", [](const Violation& v) { return v.kind; })
        .def("__repr__", [](const Violation& v) { return "<Violation: " + v.message + ">"; });
    py::enum_<Violation::Kind>(violation, "Kind")
        .value("Dimension", Violation::Kind::Dimension)
        .value("ExpertiseRange", Violation::Kind::ExpertiseRange)
        .value("RowNotStochastic", Violation::Kind::RowNotStochastic)
        .value("NegativeEntry", Violation::Kind::NegativeEntry)
        .value("LambdaRange", Violation::Kind::LambdaRange)
        .value("LearningRange", Violation::Kind::LearningRange);

    m.def("validate_initial", &validate_initial, py::arg("state"), py::arg("params"));
    m.def("appraisal_step", &appraisal_step, py::arg("state"), py::arg("params"));
    m.def("expertise_step", &expertise_step, py::arg("state"), py::arg("params"));
    m.def("step", &step, py::arg("state"), py::arg("params"));
    m.def("normalized_expertise", &normalized_expertise, py::arg("expertise"));

    // --- graph analysis ---
    py::class_<CommunicationClass>(m, "CommunicationClass")
        .def_readonly("index", &CommunicationClass::index)
        .def_readonly("members", &CommunicationClass::members)
        .def_readonly("is_scalar", &CommunicationClass::is_scalar)
        .def_property_readonly("size", &CommunicationClass::size);

    py::class_<FrobeniusDecomposition>(m, "FrobeniusDecomposition")
        .def_readonly("permutation", &FrobeniusDecomposition::permutation)
        .def_readonly("classes", &FrobeniusDecomposition::classes)
        .def_readonly("accessibility", &FrobeniusDecomposition::accessibility)
        .def_property_readonly("class_count", &FrobeniusDecomposition::class_count);

    py::enum_<MatrixStructure>(m, "MatrixStructure")
        .value("Scalar", MatrixStructure::Scalar)
        .value("Irreducible", MatrixStructure::Irreducible)
        .value("Reducible", MatrixStructure::Reducible);

    m.def("strongly_connected_components", &strongly_connected_components, py::arg("matrix"));
    m.def("classify_structure", &classify_structure, py::arg("matrix"));
    m.def("is_irreducible", &is_irreducible, py::arg("matrix"));
    m.def("frobenius_form", &frobenius_form, py::arg("matrix"));
    m.def("accessibility", &accessibility, py::arg("decomposition"), py::arg("matrix"));
    m.def("permute", &permute, py::arg("matrix"), py::arg("permutation"));

    // --- asymptotics ---
    py::enum_<Regime>(m, "Regime")
        .value("NoStubborn", Regime::NoStubborn)
        .value("AllStubborn", Regime::AllStubborn)
        .value("Mixed", Regime::Mixed);

    py::class_<ExactLimit>(m, "ExactLimit")
        .def_readonly("appraisal", &ExactLimit::appraisal)
        .def_readonly("expertise", &ExactLimit::expertise)
        .def_readonly("alpha", &ExactLimit::alpha);

    py::class_<ClassBound>(m, "ClassBound")
        .def_readonly("class_index", &ClassBound::class_index)
        .def_readonly("members", &ClassBound::members)
        .def_readonly("lower", &ClassBound::lower)
        .def_readonly("upper", &ClassBound::upper);

    py::class_<ClassBoundsPrediction>(m, "ClassBoundsPrediction")
        .def_readonly("bounds", &ClassBoundsPrediction::bounds);

    py::class_<UnsupportedPrediction>(m, "UnsupportedPrediction")
        .def_readonly("reason", &UnsupportedPrediction::reason);

    py::class_<EquilibriumReport>(m, "EquilibriumReport")
        .def_readonly("is_equilibrium", &EquilibriumReport::is_equilibrium)
        .def_readonly("residual_appraisal", &EquilibriumReport::residual_appraisal)
        .def_readonly("slack_expertise", &EquilibriumReport::slack_expertise);

    m.def("classify_regime", &classify_regime, py::arg("params"));
    m.def("is_equilibrium", &is_equilibrium, py::arg("state"), py::arg("params"),
          py::arg("tol"));
    m.def(
        "predict_limit",
        [](const TeamState& state0, const ModelParams& params,
           const FrobeniusDecomposition* decomp) {
            return predict_limit(state0, params, decomp);
        },
        py::arg("state0"), py::arg("params"), py::arg("decomposition") = nullptr);
    m.def("class_bounds", &class_bounds, py::arg("decomposition"), py::arg("expertise0"));
    m.def("discounted_share_partial_sums", &discounted_share_partial_sums,
          py::arg("expertise_history"), py::arg("lambda_"), py::arg("agent"));
    m.def("discounted_share_bound", &discounted_share_bound, py::arg("lambda_"),
          py::arg("initial_l1_mass"));

    // --- simulation harness ---
    py::class_<StoppingCriterion>(m, "StoppingCriterion")
        .def(py::init<>())
        .def(py::init([](std::int64_t max_steps, double tol, int window) {
                 return StoppingCriterion{max_steps, tol, window};
             }),
             py::arg("max_steps") = 100000, py::arg("tol") = 1e-10, py::arg("window") = 10)
        .def_readwrite("max_steps", &StoppingCriterion::max_steps)
        .def_readwrite("tol", &StoppingCriterion::tol)
        .def_readwrite("window", &StoppingCriterion::window);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("snapshots", &Trajectory::snapshots)
        .def_readonly("converged", &Trajectory::converged)
        .def_readonly("steps_taken", &Trajectory::steps_taken)
        .def_readonly("final_state", &Trajectory::final_state);

    py::class_<CoefficientSpec> spec(m, "CoefficientSpec");
    spec.def_static("uniform", &CoefficientSpec::uniform)
        .def_static("all_zero", &CoefficientSpec::all_zero)
        .def_static("constant", &CoefficientSpec::constant, py::arg("value"))
        .def_static("explicit_values", &CoefficientSpec::explicit_values, py::arg("values"));

    m.def("simulate", &simulate, py::arg("state0"), py::arg("params"),
          py::arg("stop") = StoppingCriterion{}, py::arg("stride") = 1);
    m.def("random_team", &random_team, py::arg("n_agents"), py::arg("seed"),
          py::arg("lambda_spec") = CoefficientSpec::uniform(),
          py::arg("learning_spec") = CoefficientSpec::uniform());

    // --- experiment orchestration ---
    py::class_<ExplicitInit>(m, "ExplicitInit")
        .def(py::init([](Matrix appraisal, Vector expertise) {
                 return ExplicitInit{std::move(appraisal), std::move(expertise)};
             }),
             py::arg("appraisal"), py::arg("expertise"))
        .def_readwrite("appraisal", &ExplicitInit::appraisal)
        .def_readwrite("expertise", &ExplicitInit::expertise);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_agents", &ExperimentConfig::n_agents)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("matrices", &ExperimentConfig::matrices)
        .def_readwrite("lambda_spec", &ExperimentConfig::lambda_spec)
        .def_readwrite("learning_spec", &ExperimentConfig::learning_spec)
        .def_readwrite("stopping", &ExperimentConfig::stopping)
        .def_readwrite("stride", &ExperimentConfig::stride);

    py::class_<PredictionResiduals>(m, "PredictionResiduals")
        .def_readonly("expertise", &PredictionResiduals::expertise)
        .def_readonly("appraisal", &PredictionResiduals::appraisal)
        .def_readonly("class_bound_violation", &PredictionResiduals::class_bound_violation);

    py::class_<ExperimentSummary>(m, "ExperimentSummary")
        .def_readonly("regime", &ExperimentSummary::regime)
        .def_readonly("prediction", &ExperimentSummary::prediction)
        .def_readonly("converged", &ExperimentSummary::converged)
        .def_readonly("steps_taken", &ExperimentSummary::steps_taken)
        .def_readonly("final_state", &ExperimentSummary::final_state)
        .def_readonly("residuals", &ExperimentSummary::residuals)
        .def_readonly("seed", &ExperimentSummary::seed);

    m.def("run_experiment", &run_experiment, py::arg("config"));
    m.def("predict_only", &predict_only, py::arg("config"));

    py::class_<SweepGrid>(m, "SweepGrid")
        .def(py::init<>())
        .def_readwrite("team_sizes", &SweepGrid::team_sizes)
        .def_readwrite("lambda_values", &SweepGrid::lambda_values)
        .def_readwrite("learning_values", &SweepGrid::learning_values);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("n_agents", &SweepCell::n_agents)
        .def_readonly("lambda_value", &SweepCell::lambda_value)
        .def_readonly("learning_value", &SweepCell::learning_value)
        .def_readonly("seed", &SweepCell::seed)
        .def_readonly("summary", &SweepCell::summary)
        .def_readonly("error", &SweepCell::error);

    m.def("batch_sweep", &batch_sweep, py::arg("base"), py::arg("grid"), py::arg("seeds"));
}
