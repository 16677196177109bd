#include "run_config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/nonlinear_model.hpp"

namespace robust_synth::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw InputError("config: " + key + ": " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Eigen::VectorXd vec(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::MatrixXd mat(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols || cols == 0) fail(row_path, "rows must have equal, nonzero length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], row_path);
    }
  }
  return m;
}

Box box(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected [[lo,hi],...]");
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& iv = j[i];
    if (!iv.is_array() || iv.size() != 2) fail(path + "[" + std::to_string(i) + "]", "expected [lo,hi]");
    lo.push_back(number(iv[0], path));
    hi.push_back(number(iv[1], path));
    if (lo.back() > hi.back()) fail(path + "[" + std::to_string(i) + "]", "lo exceeds hi");
  }
  return Box(std::move(lo), std::move(hi));
}

std::vector<std::size_t> counts(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of counts");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(count(j[i], path + "[" + std::to_string(i) + "]"));
    if (out.back() == 0) fail(path + "[" + std::to_string(i) + "]", "must be positive");
  }
  return out;
}

models::SystemModel build_model(const json& m) {
  const auto& type_j = require(m, "type", "model");
  if (!type_j.is_string()) fail("model.type", "expected a string");
  const std::string type = type_j.get<std::string>();
  const Eigen::MatrixXd R = mat(require(m, "R", "model"), "model.R");
  if (type == "linear") {
    Eigen::MatrixXd A = mat(require(m, "A", "model"), "model.A");
    Eigen::MatrixXd B = mat(require(m, "B", "model"), "model.B");
    Eigen::MatrixXd C = mat(require(m, "C", "model"), "model.C");
    Eigen::VectorXd theta0 = m.contains("theta0") ? vec(m["theta0"], "model.theta0") : Eigen::VectorXd::Zero(A.rows());
    try {
      return models::LinearModel(std::move(A), std::move(B), std::move(C), R, std::move(theta0));
    } catch (const InputError& e) {
      fail("model", e.what());
    }
  }
  // Reject unknown names before the parameters so the message points at the type.
  try {
    models::make_dynamics(type, {});
  } catch (const InputError& e) {
    fail("model.type", e.what());
  }
  std::map<std::string, double> params;
  for (const auto& [key, value] : m.items()) {
    if (key == "type" || key == "R" || key == "theta0") continue;
    params[key] = number(value, "model." + key);
  }
  auto dynamics = models::make_dynamics(type, params);
  const Eigen::VectorXd theta0 = vec(require(m, "theta0", "model"), "model.theta0");
  try {
    return models::NonlinearModel(std::move(dynamics), R, theta0);
  } catch (const InputError& e) {
    fail("model", e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw InputError("not a number: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InputError("empty vector");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte points one past the offending character.
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError("config: malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
  if (!j.is_object()) fail("(root)", "expected an object");

  auto model = build_model(require(j, "model", ""));
  const std::size_t n = model.state_dim();

  const Box theta_box = box(require(j, "uncertainty", ""), "uncertainty");
  if (!theta_box.contains(model.nominal_theta())) fail("uncertainty", "must contain theta0");
  if (theta_box.dim() != static_cast<std::size_t>(model.nominal_theta().size())) {
    fail("uncertainty", "dimension differs from theta0");
  }

  const auto& spec = require(j, "specification", "");
  const auto& ap_j = require(spec, "ap", "specification");
  if (!ap_j.is_array()) fail("specification.ap", "expected an array of names");
  std::vector<std::string> ap;
  for (const auto& a : ap_j) {
    if (!a.is_string()) fail("specification.ap", "expected names");
    ap.push_back(a.get<std::string>());
  }
  const auto& formula_j = require(spec, "formula", "specification");
  if (!formula_j.is_string()) fail("specification.formula", "expected a string");

  const auto& regions_j = require(spec, "regions", "specification");
  if (!regions_j.is_object()) fail("specification.regions", "expected an object of boxes");
  std::vector<std::pair<std::string, Box>> regions;
  for (const auto& [name, value] : regions_j.items()) {
    regions.emplace_back(name, box(value, "specification.regions." + name));
    if (regions.back().second.dim() != model.output_dim()) {
      fail("specification.regions." + name, "dimension differs from the output dimension");
    }
  }
  models::LabelingMap labels;
  try {
    labels = models::LabelingMap(ap, regions);
  } catch (const InputError& e) {
    fail("specification.regions", e.what());
  }

  const auto& grid_j = require(j, "grid", "");
  Box grid_bounds = box(require(grid_j, "bounds", "grid"), "grid.bounds");
  auto grid_cells = counts(require(grid_j, "cells", "grid"), "grid.cells");
  if (grid_bounds.dim() != n || grid_cells.size() != n) fail("grid", "needs one interval and one count per state");

  const auto& inputs_j = require(j, "inputs", "");
  Box input_bounds = box(require(inputs_j, "bounds", "inputs"), "inputs.bounds");
  auto input_samples = counts(require(inputs_j, "samples", "inputs"), "inputs.samples");
  if (input_bounds.dim() != model.input_dim() || input_samples.size() != model.input_dim()) {
    fail("inputs", "needs one interval and one count per input");
  }

  RunConfig cfg{
      .name = j.value("name", std::string("run")),
      .model = std::move(model),
      .theta_set = models::UncertaintyBox(theta_box),
      .ap = std::move(ap),
      .formula = formula_j.get<std::string>(),
      .labels = std::move(labels),
      .grid_bounds = std::move(grid_bounds),
      .grid_cells = std::move(grid_cells),
      .input_bounds = std::move(input_bounds),
      .input_samples = std::move(input_samples),
      .initial_states = {},
      .output_dir = {},
  };

  if (j.contains("synthesis")) {
    const auto& s = j["synthesis"];
    if (s.contains("tolerance")) cfg.tolerance = number(s["tolerance"], "synthesis.tolerance");
    if (s.contains("max_iterations")) cfg.max_iterations = count(s["max_iterations"], "synthesis.max_iterations");
    if (!(cfg.tolerance > 0)) fail("synthesis.tolerance", "must be positive");
  }
  if (j.contains("simulation")) {
    const auto& s = j["simulation"];
    if (s.contains("runs")) cfg.runs = count(s["runs"], "simulation.runs");
    if (s.contains("horizon")) cfg.horizon = count(s["horizon"], "simulation.horizon");
    if (s.contains("seed")) cfg.seed = count(s["seed"], "simulation.seed");
    if (s.contains("confidence")) cfg.confidence = number(s["confidence"], "simulation.confidence");
    if (!(cfg.confidence > 0 && cfg.confidence < 1)) fail("simulation.confidence", "must lie in (0,1)");
    if (s.contains("initial_states")) {
      const auto& list = s["initial_states"];
      if (!list.is_array()) fail("simulation.initial_states", "expected an array of points");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "simulation.initial_states[" + std::to_string(i) + "]";
        cfg.initial_states.push_back(vec(list[i], path));
        if (static_cast<std::size_t>(cfg.initial_states.back().size()) != n) fail(path, "wrong dimension");
      }
    }
  }
  const auto out = j.value("output", std::string("run"));
  cfg.output_dir = out;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace robust_synth::app
