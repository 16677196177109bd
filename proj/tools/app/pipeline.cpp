#include "pipeline.hpp"

#include <cmath>
#include <limits>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/scltl/formula.hpp"

namespace robust_synth::app {

using nlohmann::json;
using nlohmann::ordered_json;

scltl::Dfa compile_formula(const RunConfig& cfg) {
  return scltl::compile_to_dfa(scltl::parse_formula(cfg.formula, cfg.ap), cfg.ap);
}

abstraction::Grid make_grid(const RunConfig& cfg) { return abstraction::build_grid(cfg.grid_bounds, cfg.grid_cells); }

std::vector<Eigen::VectorXd> make_inputs(const RunConfig& cfg) {
  return abstraction::input_sampling(cfg.input_bounds, cfg.input_samples);
}

ssr::SsrCertificate certify(const RunConfig& cfg) {
  if (cfg.model.is_linear()) return ssr::delta_linear(cfg.model.linear(), cfg.theta_set);
  const auto grid = make_grid(cfg);
  const auto cells = grid.cells();
  const auto inputs = make_inputs(cfg);
  return ssr::delta_nonlinear_table(cfg.model.nonlinear(), cfg.theta_set, cells, inputs);
}

abstraction::Abstraction abstract(const RunConfig& cfg) {
  const auto grid = make_grid(cfg);
  if (cfg.model.is_linear()) return abstraction::abstract_linear(cfg.model.linear(), grid, make_inputs(cfg));
  return abstraction::abstract_nonlinear(cfg.model.nonlinear(), grid, make_inputs(cfg));
}

std::unique_ptr<SynthesisRun> synthesize(const RunConfig& cfg, const ssr::SsrCertificate& model_cert, bool force,
                                         const std::function<void(std::size_t, double)>& on_sweep) {
  auto run = std::make_unique<SynthesisRun>();
  run->abstraction = abstract(cfg);
  run->certificate = ssr::compose_transitive(run->abstraction.certificate, model_cert);
  if (!run->certificate.valid && !force) {
    throw NumericError("certificate is invalid (" + run->certificate.provenance.back() + "); use --force to override");
  }
  if (!std::isfinite(run->certificate.epsilon)) throw NumericError("certificate epsilon is not finite");
  run->dfa = compile_formula(cfg);
  run->product = std::make_unique<synthesis::RobustProduct>(run->abstraction.mdp, run->dfa, cfg.labels,
                                                            run->certificate.epsilon);
  synthesis::IterationOptions options;
  options.tolerance = cfg.tolerance;
  options.max_iterations = cfg.max_iterations;
  options.on_sweep = on_sweep;
  run->result = synthesis::value_iterate(*run->product, run->certificate.delta, options);
  return run;
}

std::vector<Eigen::VectorXd> initial_states(const RunConfig& cfg, const abstraction::Grid& grid) {
  if (!cfg.initial_states.empty()) return cfg.initial_states;
  constexpr std::size_t kPerDim = 5;
  std::vector<std::size_t> picks(grid.dim());
  std::size_t total = 1;
  for (std::size_t i = 0; i < grid.dim(); ++i) total *= std::min(kPerDim, grid.cells_per_dim()[i]);
  std::vector<Eigen::VectorXd> out;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    std::vector<std::size_t> multi(grid.dim());
    for (std::size_t i = 0; i < grid.dim(); ++i) {
      const std::size_t n = grid.cells_per_dim()[i];
      const std::size_t k = std::min(kPerDim, n);
      const std::size_t j = rest % k;
      rest /= k;
      // Evenly spaced cell indices, avoiding the outermost ring when possible.
      multi[i] = k == 1 ? n / 2 : (2 * j + 1) * n / (2 * k);
    }
    out.push_back(grid.center(grid.flat_index(multi)));
  }
  return out;
}

ordered_json certificate_to_json(const ssr::SsrCertificate& cert) {
  ordered_json j;
  j["abstract_model"] = cert.abstract_model;
  j["concrete_model"] = cert.concrete_model;
  j["valid"] = cert.valid;
  j["epsilon"] = cert.epsilon;
  j["delta_global"] = cert.delta_global();
  if (const auto* t = std::get_if<ssr::DeltaTable>(&cert.delta)) {
    j["delta_table"] = {{"states", t->num_states()}, {"inputs", t->num_inputs()}, {"values", t->values()}};
  } else {
    j["delta"] = std::get<double>(cert.delta);
  }
  j["relation"] = {{"radius", cert.relation.radius}, {"description", cert.relation.description}};
  j["provenance"] = cert.provenance;
  return j;
}

ssr::SsrCertificate certificate_from_json(const json& j) {
  try {
    ssr::SsrCertificate c;
    c.abstract_model = j.at("abstract_model").get<std::string>();
    c.concrete_model = j.at("concrete_model").get<std::string>();
    c.valid = j.at("valid").get<bool>();
    c.epsilon = j.at("epsilon").is_null() ? std::numeric_limits<double>::infinity() : j.at("epsilon").get<double>();
    if (j.contains("delta_table")) {
      const auto& t = j["delta_table"];
      ssr::DeltaTable table(t.at("states").get<std::size_t>(), t.at("inputs").get<std::size_t>());
      auto values = t.at("values").get<std::vector<double>>();
      if (values.size() != table.values().size()) throw InputError("certificate: delta table size mismatch");
      table.values() = std::move(values);
      c.delta = std::move(table);
    } else {
      c.delta = j.at("delta").get<double>();
    }
    c.relation.radius = j.at("relation").at("radius").get<double>();
    c.relation.description = j.at("relation").at("description").get<std::string>();
    c.relation.kind = c.relation.radius == 0.0 ? ssr::RelationKind::Identity : ssr::RelationKind::GridCell;
    c.provenance = j.at("provenance").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
}

}  // namespace robust_synth::app
