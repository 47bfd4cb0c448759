#include "tmsim/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace tmsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail_fields(const std::vector<std::string>& problems) {
    std::ostringstream os;
    os << "invalid config:";
    for (const std::string& p : problems) os << "\n  - " << p;
    throw std::invalid_argument(os.str());
}

void check_known_keys(const json& object, const std::vector<std::string>& known,
                      const std::string& scope, std::vector<std::string>& problems) {
    for (const auto& item : object.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            problems.push_back(scope + item.key() + ": unknown field");
        }
    }
}

Vector parse_vector(const json& array, const std::string& field,
                    std::vector<std::string>& problems) {
    if (!array.is_array() || array.empty()) {
        problems.push_back(field + ": must be a non-empty array of numbers");
        return {};
    }
    Vector out(array.size());
    for (size_t i = 0; i < array.size(); ++i) {
        if (!array[i].is_number()) {
            problems.push_back(field + "[" + std::to_string(i) + "]: must be a number");
            return {};
        }
        out[static_cast<Eigen::Index>(i)] = array[i].get<double>();
    }
    return out;
}

CoefficientSpec parse_coefficient_spec(const json& node, const std::string& field,
                                       bool allow_zero, std::vector<std::string>& problems) {
    CoefficientSpec spec;
    if (!node.is_object()) {
        problems.push_back(field + ": must be an object with 'mode' or 'values'");
        return spec;
    }
    check_known_keys(node, {"mode", "value", "values"}, field + ".", problems);

    if (node.contains("values")) {
        if (node.contains("mode") && node["mode"] != "explicit") {
            problems.push_back(field + ": 'values' conflicts with mode '" +
                               node["mode"].get<std::string>() + "'");
        }
        spec = CoefficientSpec::explicit_values(parse_vector(node["values"], field + ".values", problems));
        return spec;
    }

    const std::string mode = node.value("mode", "uniform");
    if (mode == "uniform") {
        spec.mode = CoefficientSpec::Mode::Uniform;
        if (node.contains("value")) {
            problems.push_back(field + ".value: not allowed with mode 'uniform'");
        }
    } else if (mode == "all_zero") {
        spec.mode = CoefficientSpec::Mode::AllZero;
        if (!allow_zero) {
            problems.push_back(field + ".mode: 'all_zero' is only valid for lambda");
        }
    } else if (mode == "constant") {
        spec.mode = CoefficientSpec::Mode::Constant;
        if (!node.contains("value") || !node["value"].is_number()) {
            problems.push_back(field + ".value: required number for mode 'constant'");
        } else {
            spec.value = node["value"].get<double>();
            const bool ok = allow_zero ? (spec.value >= 0.0 && spec.value <= 1.0)
                                       : (spec.value > 0.0 && spec.value <= 1.0);
            if (!ok) {
                problems.push_back(field + ".value: " + format_double(spec.value) +
                                   (allow_zero ? " not in [0,1]" : " not in (0,1]"));
            }
        }
    } else {
        problems.push_back(field + ".mode: unknown mode '" + mode + "'");
    }
    return spec;
}

json coefficient_spec_to_json(const CoefficientSpec& spec) {
    switch (spec.mode) {
        case CoefficientSpec::Mode::Uniform:
            return json{{"mode", "uniform"}};
        case CoefficientSpec::Mode::AllZero:
            return json{{"mode", "all_zero"}};
        case CoefficientSpec::Mode::Constant:
            return json{{"mode", "constant"}, {"value", spec.value}};
        case CoefficientSpec::Mode::Explicit: {
            json values = json::array();
            for (Eigen::Index i = 0; i < spec.values.size(); ++i) values.push_back(spec.values[i]);
            return json{{"mode", "explicit"}, {"values", values}};
        }
    }
    return {};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Matrix parse_matrix(const json& rows, const std::string& field,
                    std::vector<std::string>& problems) {
    if (!rows.is_array() || rows.empty()) {
        problems.push_back(field + ": must be a non-empty array of rows");
        return {};
    }
    const size_t n = rows.size();
    Matrix out(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            problems.push_back(field + "[" + std::to_string(i) + "]: must be a row of length " +
                               std::to_string(n) + " (matrix must be square)");
            return {};
        }
        for (size_t j = 0; j < n; ++j) {
            if (!rows[i][j].is_number()) {
                problems.push_back(field + "[" + std::to_string(i) + "][" + std::to_string(j) +
                                   "]: must be a number");
                return {};
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return out;
}

json state_to_json(const TeamState& state) {
    return json{{"t", state.time},
                {"expertise", vector_to_json(state.expertise)},
                {"appraisal", matrix_to_json(state.appraisal)}};
}

TeamState state_from_json(const json& node) {
    TeamState state;
    state.time = node.at("t").get<std::int64_t>();
    const auto& y = node.at("expertise");
    state.expertise.resize(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        state.expertise[static_cast<Eigen::Index>(i)] = y[i].get<double>();
    }
    const auto& rows = node.at("appraisal");
    state.appraisal.resize(rows.size(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            state.appraisal(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return state;
}

json prediction_to_json(const LimitPrediction& prediction) {
    json out;
    if (const auto* exact = std::get_if<ExactLimit>(&prediction)) {
        out["variant"] = "exact_limit";
        out["alpha"] = exact->alpha;
        out["limit_expertise"] = vector_to_json(exact->expertise);
        if (exact->appraisal) {
            out["limit_appraisal"] = matrix_to_json(*exact->appraisal);
        } else {
            out["limit_appraisal"] = nullptr;
        }
    } else if (const auto* bounds = std::get_if<ClassBoundsPrediction>(&prediction)) {
        out["variant"] = "class_bounds";
        json classes = json::array();
        for (const ClassBound& b : bounds->bounds) {
            classes.push_back(json{{"index", b.class_index},
                                   {"members", b.members},
                                   {"lower", b.lower},
                                   {"upper", b.upper}});
        }
        out["classes"] = std::move(classes);
    } else {
        out["variant"] = "unsupported";
        out["reason"] = std::get<UnsupportedPrediction>(prediction).reason;
    }
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    return out;
}

std::string sweep_value_or(const std::optional<double>& value, const CoefficientSpec& base) {
    if (value) return format_double(*value);
    switch (base.mode) {
        case CoefficientSpec::Mode::Uniform: return "uniform";
        case CoefficientSpec::Mode::AllZero: return "all_zero";
        case CoefficientSpec::Mode::Constant: return format_double(base.value);
        case CoefficientSpec::Mode::Explicit: return "explicit";
    }
    return "";
}

}  // namespace

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

LoadedConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }

    std::vector<std::string> problems;
    if (!doc.is_object()) fail_fields({"top level: must be a JSON object"});
    check_known_keys(doc,
                     {"n_agents", "seed", "matrices", "lambda_spec", "learning_spec",
                      "stopping", "stride", "output", "sweep"},
                     "", problems);

    LoadedConfig loaded;
    ExperimentConfig& config = loaded.experiment;

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            problems.push_back("seed: must be a nonnegative integer");
        } else {
            config.seed = doc["seed"].get<std::uint64_t>();
        }
    }

    if (doc.contains("matrices")) {
        const json& m = doc["matrices"];
        if (!m.is_object()) {
            problems.push_back("matrices: must be an object with 'appraisal' and 'expertise'");
        } else {
            check_known_keys(m, {"appraisal", "expertise"}, "matrices.", problems);
            ExplicitInit init;
            if (!m.contains("appraisal") || !m.contains("expertise")) {
                problems.push_back("matrices: both 'appraisal' and 'expertise' are required");
            } else {
                init.appraisal = parse_matrix(m["appraisal"], "matrices.appraisal", problems);
                init.expertise = parse_vector(m["expertise"], "matrices.expertise", problems);
                if (problems.empty() && init.appraisal.rows() != init.expertise.size()) {
                    problems.push_back("matrices: appraisal is " +
                                       std::to_string(init.appraisal.rows()) +
                                       "x" + std::to_string(init.appraisal.cols()) +
                                       " but expertise has length " +
                                       std::to_string(init.expertise.size()));
                }
            }
            config.matrices = std::move(init);
        }
    }

    if (config.seed && config.matrices) {
        problems.push_back("seed/matrices: ambiguous, provide exactly one");
    }
    if (!config.seed && !config.matrices) {
        problems.push_back("seed/matrices: one of the two is required");
    }

    if (doc.contains("n_agents")) {
        if (!doc["n_agents"].is_number_integer() || doc["n_agents"].get<std::int64_t>() < 2) {
            problems.push_back("n_agents: must be an integer >= 2");
        } else {
            config.n_agents = doc["n_agents"].get<int>();
        }
    } else if (config.seed) {
        problems.push_back("n_agents: required with seed-based generation");
    }
    if (config.matrices && config.n_agents == 0) {
        config.n_agents = static_cast<int>(config.matrices->expertise.size());
    }

    config.lambda_spec =
        doc.contains("lambda_spec")
            ? parse_coefficient_spec(doc["lambda_spec"], "lambda_spec", true, problems)
            : CoefficientSpec::uniform();
    config.learning_spec =
        doc.contains("learning_spec")
            ? parse_coefficient_spec(doc["learning_spec"], "learning_spec", false, problems)
            : CoefficientSpec::uniform();

    if (doc.contains("stopping")) {
        const json& s = doc["stopping"];
        if (!s.is_object()) {
            problems.push_back("stopping: must be an object");
        } else {
            check_known_keys(s, {"max_steps", "tol", "window"}, "stopping.", problems);
            if (s.contains("max_steps")) {
                if (!s["max_steps"].is_number_integer() || s["max_steps"].get<std::int64_t>() < 1) {
                    problems.push_back("stopping.max_steps: must be a positive integer");
                } else {
                    config.stopping.max_steps = s["max_steps"].get<std::int64_t>();
                }
            }
            if (s.contains("tol")) {
                if (!s["tol"].is_number() || !(s["tol"].get<double>() > 0.0)) {
                    problems.push_back("stopping.tol: must be a positive number");
                } else {
                    config.stopping.tol = s["tol"].get<double>();
                }
            }
            if (s.contains("window")) {
                if (!s["window"].is_number_integer() || s["window"].get<std::int64_t>() < 1) {
                    problems.push_back("stopping.window: must be a positive integer");
                } else {
                    config.stopping.window = s["window"].get<int>();
                }
            }
        }
    }

    if (doc.contains("stride")) {
        if (!doc["stride"].is_number_integer() || doc["stride"].get<std::int64_t>() < 0) {
            problems.push_back("stride: must be a nonnegative integer (0 = automatic)");
        } else {
            config.stride = doc["stride"].get<int>();
        }
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (!o.is_object()) {
            problems.push_back("output: must be an object");
        } else {
            check_known_keys(o, {"dir", "format"}, "output.", problems);
            config.output_dir = o.value("dir", "");
            const std::string format = o.value("format", "csv");
            if (format == "csv") {
                config.format = OutputFormat::Csv;
            } else if (format == "json") {
                config.format = OutputFormat::Json;
            } else {
                problems.push_back("output.format: must be 'csv' or 'json'");
            }
        }
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        if (!s.is_object()) {
            problems.push_back("sweep: must be an object");
        } else {
            check_known_keys(s, {"n_agents", "lambda", "learning", "seeds"}, "sweep.", problems);
            SweepSpec sweep;
            auto value_list = [&problems](const json& node, const std::string& field,
                                          auto valid, const char* expected, auto push) {
                if (!node.is_array() || node.empty()) {
                    problems.push_back(field + ": must be a non-empty array");
                    return;
                }
                for (size_t i = 0; i < node.size(); ++i) {
                    if (!valid(node[i])) {
                        problems.push_back(field + "[" + std::to_string(i) + "]: must be " +
                                           expected);
                        return;
                    }
                    push(node[i]);
                }
            };
            const auto is_number = [](const json& v) { return v.is_number(); };
            const auto is_integer = [](const json& v) { return v.is_number_integer(); };
            const auto is_unsigned = [](const json& v) { return v.is_number_unsigned(); };
            if (s.contains("n_agents")) {
                value_list(s["n_agents"], "sweep.n_agents", is_integer, "an integer",
                           [&sweep](const json& v) {
                               sweep.grid.team_sizes.push_back(v.get<int>());
                           });
            }
            if (s.contains("lambda")) {
                value_list(s["lambda"], "sweep.lambda", is_number, "a number",
                           [&sweep](const json& v) {
                               sweep.grid.lambda_values.push_back(v.get<double>());
                           });
            }
            if (s.contains("learning")) {
                value_list(s["learning"], "sweep.learning", is_number, "a number",
                           [&sweep](const json& v) {
                               sweep.grid.learning_values.push_back(v.get<double>());
                           });
            }
            if (!s.contains("seeds")) {
                problems.push_back("sweep.seeds: required");
            } else {
                value_list(s["seeds"], "sweep.seeds", is_unsigned,
                           "a nonnegative integer", [&sweep](const json& v) {
                               sweep.seeds.push_back(v.get<std::uint64_t>());
                           });
            }
            loaded.sweep = std::move(sweep);
        }
    }

    if (!problems.empty()) fail_fields(problems);

    // Materialization re-checks model-level invariants (expertise range,
    // row sums, coefficient ranges) so violations surface at load time.
    try {
        materialize(config);
    } catch (const std::invalid_argument& e) {
        fail_fields({e.what()});
    }
    return loaded;
}

std::string config_to_json(const ExperimentConfig& config) {
    json doc;
    doc["n_agents"] = config.n_agents;
    if (config.seed) doc["seed"] = *config.seed;
    if (config.matrices) {
        doc["matrices"] = json{{"appraisal", matrix_to_json(config.matrices->appraisal)},
                               {"expertise", vector_to_json(config.matrices->expertise)}};
    }
    doc["lambda_spec"] = coefficient_spec_to_json(config.lambda_spec);
    doc["learning_spec"] = coefficient_spec_to_json(config.learning_spec);
    doc["stopping"] = json{{"max_steps", config.stopping.max_steps},
                           {"tol", config.stopping.tol},
                           {"window", config.stopping.window}};
    doc["stride"] = config.stride;
    doc["output"] = json{{"dir", config.output_dir},
                         {"format", config.format == OutputFormat::Csv ? "csv" : "json"}};
    return doc.dump(2);
}

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    if (trajectory.snapshots.empty()) {
        throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    }
    std::ofstream out = open_out(path);
    out << "t,agent,expertise\n";
    for (const TeamState& state : trajectory.snapshots) {
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            out << state.time << ',' << i << ',' << format_double(state.expertise[i]) << '\n';
        }
    }
}

void write_appraisal_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    if (trajectory.snapshots.empty()) {
        throw std::invalid_argument("write_appraisal_csv: empty trajectory");
    }
    std::ofstream out = open_out(path);
    out << "t,i,j,appraisal\n";
    for (const TeamState& state : trajectory.snapshots) {
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            for (Eigen::Index j = 0; j < state.size(); ++j) {
                out << state.time << ',' << i << ',' << j << ','
                    << format_double(state.appraisal(i, j)) << '\n';
            }
        }
    }
}

void write_trajectory_json(const Trajectory& trajectory, const std::filesystem::path& path) {
    if (trajectory.snapshots.empty()) {
        throw std::invalid_argument("write_trajectory_json: empty trajectory");
    }
    json doc;
    doc["converged"] = trajectory.converged;
    doc["steps_taken"] = trajectory.steps_taken;
    json snapshots = json::array();
    for (const TeamState& state : trajectory.snapshots) snapshots.push_back(state_to_json(state));
    doc["snapshots"] = std::move(snapshots);
    doc["final_state"] = state_to_json(trajectory.final_state);

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

Trajectory read_trajectory_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read trajectory file: " + path.string());
    }
    json doc = json::parse(in);
    Trajectory trajectory;
    trajectory.converged = doc.at("converged").get<bool>();
    trajectory.steps_taken = doc.at("steps_taken").get<std::int64_t>();
    for (const json& node : doc.at("snapshots")) {
        trajectory.snapshots.push_back(state_from_json(node));
    }
    trajectory.final_state = state_from_json(doc.at("final_state"));
    return trajectory;
}

void write_summary_json(const ExperimentSummary& summary, const ExperimentConfig& config,
                        const std::filesystem::path& path) {
    json doc;
    doc["regime"] = regime_name(summary.regime);
    doc["prediction"] = prediction_to_json(summary.prediction);
    doc["converged"] = summary.converged;
    doc["steps_taken"] = summary.steps_taken;
    if (summary.seed) doc["seed"] = *summary.seed;

    json residuals;
    if (summary.residuals.expertise) residuals["expertise"] = *summary.residuals.expertise;
    if (summary.residuals.appraisal) residuals["appraisal"] = *summary.residuals.appraisal;
    if (summary.residuals.class_bound_violation) {
        residuals["class_bound_violation"] = *summary.residuals.class_bound_violation;
    }
    doc["residuals"] = std::move(residuals);
    doc["final_state"] = state_to_json(summary.final_state);
    doc["config"] = json::parse(config_to_json(config));

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_sweep_json(const std::vector<SweepCell>& cells, const ExperimentConfig& base,
                      const std::filesystem::path& path) {
    json doc;
    doc["base_config"] = json::parse(config_to_json(base));
    json rows = json::array();
    for (const SweepCell& cell : cells) {
        json row;
        row["n_agents"] = cell.n_agents;
        if (cell.lambda_value) row["lambda"] = *cell.lambda_value;
        if (cell.learning_value) row["learning"] = *cell.learning_value;
        row["seed"] = cell.seed;
        if (!cell.error.empty()) {
            row["error"] = cell.error;
        } else if (cell.summary) {
            row["regime"] = regime_name(cell.summary->regime);
            row["prediction"] = prediction_to_json(cell.summary->prediction);
            row["converged"] = cell.summary->converged;
            row["steps_taken"] = cell.summary->steps_taken;
            json residuals;
            if (cell.summary->residuals.expertise) {
                residuals["expertise"] = *cell.summary->residuals.expertise;
            }
            if (cell.summary->residuals.appraisal) {
                residuals["appraisal"] = *cell.summary->residuals.appraisal;
            }
            if (cell.summary->residuals.class_bound_violation) {
                residuals["class_bound_violation"] = *cell.summary->residuals.class_bound_violation;
            }
            row["residuals"] = std::move(residuals);
        }
        rows.push_back(std::move(row));
    }
    doc["cells"] = std::move(rows);

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_sweep_csv(const std::vector<SweepCell>& cells, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "cell,n_agents,lambda,learning,seed,regime,variant,alpha,"
           "expertise_residual,appraisal_residual,max_bound_violation,"
           "steps_taken,converged,error\n";
    for (size_t index = 0; index < cells.size(); ++index) {
        const SweepCell& cell = cells[index];
        out << index << ',' << cell.n_agents << ','
            << (cell.lambda_value ? format_double(*cell.lambda_value) : "") << ','
            << (cell.learning_value ? format_double(*cell.learning_value) : "") << ','
            << cell.seed << ',';
        if (cell.summary) {
            const ExperimentSummary& s = *cell.summary;
            out << regime_name(s.regime) << ',';
            if (const auto* exact = std::get_if<ExactLimit>(&s.prediction)) {
                out << "exact_limit," << format_double(exact->alpha) << ',';
            } else if (std::holds_alternative<ClassBoundsPrediction>(s.prediction)) {
                out << "class_bounds,,";
            } else {
                out << "unsupported,,";
            }
            out << (s.residuals.expertise ? format_double(*s.residuals.expertise) : "") << ','
                << (s.residuals.appraisal ? format_double(*s.residuals.appraisal) : "") << ',';
            if (s.residuals.class_bound_violation && !s.residuals.class_bound_violation->empty()) {
                double worst = s.residuals.class_bound_violation->front();
                for (double v : *s.residuals.class_bound_violation) worst = std::max(worst, v);
                out << format_double(worst);
            }
            out << ',' << s.steps_taken << ',' << (s.converged ? "true" : "false") << ',';
        } else {
            out << ",,,,,,,";
        }
        out << cell.error << '\n';
    }
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read matrix file: " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument("matrix file line " + std::to_string(line_number) +
                                            ": '" + cell + "' is not a number");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::invalid_argument("matrix file is empty: " + path.string());
    }
    const size_t n = rows.size();
    Matrix out(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw std::invalid_argument("matrix file row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(n));
        }
        for (size_t j = 0; j < n; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return out;
}

void write_analysis_json(const Matrix& m, const FrobeniusDecomposition& decomp,
                         const std::filesystem::path& path) {
    json doc;
    doc["n"] = m.rows();
    doc["irreducible"] = is_irreducible(m);
    doc["permutation"] = decomp.permutation;
    json classes = json::array();
    for (const CommunicationClass& cls : decomp.classes) {
        classes.push_back(json{{"index", cls.index},
                               {"members", cls.members},
                               {"size", cls.size()},
                               {"is_scalar", cls.is_scalar}});
    }
    doc["classes"] = std::move(classes);
    json access = json::array();
    for (const auto& row : decomp.accessibility) {
        json out_row = json::array();
        for (bool b : row) out_row.push_back(b);
        access.push_back(std::move(out_row));
    }
    doc["accessibility"] = std::move(access);
    doc["permuted_appraisal"] = matrix_to_json(permute(m, decomp.permutation));

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

}  // namespace tmsim
