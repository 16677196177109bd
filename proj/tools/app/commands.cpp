#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pipeline.hpp"
#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"
#include "robust_synth/refinement/simulation.hpp"
#include "robust_synth/scltl/formula.hpp"

namespace robust_synth::app {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using synthesis::format_double;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("missing " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const ordered_json& j) { open_out(path) << j.dump(2) << '\n'; }

// Records the files a command produced in <out>/manifest.json.
void update_manifest(const RunConfig& cfg, const fs::path& out, const std::string& command,
                     const std::vector<std::string>& files) {
  const fs::path path = out / "manifest.json";
  ordered_json m;
  if (fs::exists(path)) {
    std::ifstream in(path);
    m = ordered_json::parse(in, nullptr, false);
    if (m.is_discarded() || !m.is_object()) m = ordered_json::object();
  }
  m["name"] = cfg.name;
  m["seed"] = cfg.seed;
  m["commands"][command] = files;
  write_json(path, m);
}

struct Refined {
  std::unique_ptr<refinement::RefinedController> ctrl;
  abstraction::Grid grid;
  std::vector<double> sstar;
  std::size_t iterations = 0;
};

Refined load_controller(const RunConfig& cfg, const fs::path& out) {
  const json pj = read_json(out / "policy.json");
  Refined r;
  r.grid = make_grid(cfg);
  auto inputs = make_inputs(cfg);
  synthesis::Policy policy;
  try {
    const auto stored = pj.at("inputs").get<std::vector<std::vector<double>>>();
    if (stored.size() != inputs.size()) throw InputError("policy.json was produced for different inputs");
    for (std::size_t i = 0; i < stored.size(); ++i) {
      for (std::size_t k = 0; k < stored[i].size(); ++k) {
        if (stored[i][k] != inputs[i][static_cast<Eigen::Index>(k)]) {
          throw InputError("policy.json was produced for different inputs");
        }
      }
    }
    policy.num_locations = pj.at("num_locations").get<std::size_t>();
    policy.mu = pj.at("mu").get<std::vector<std::uint32_t>>();
    r.iterations = pj.at("iterations").get<std::size_t>();
  } catch (const json::exception& e) {
    throw InputError(std::string("policy.json: ") + e.what());
  }

  std::ifstream vm(out / "valuemap.csv");
  if (!vm) throw InputError("missing " + (out / "valuemap.csv").string());
  std::string line;
  std::getline(vm, line);
  while (std::getline(vm, line)) {
    const auto comma = line.rfind(',');
    r.sstar.push_back(std::stod(line.substr(comma + 1)));
  }
  if (r.sstar.size() != r.grid.num_cells()) throw InputError("valuemap.csv does not match the grid");

  r.ctrl = std::make_unique<refinement::RefinedController>(refinement::refine(
      std::move(policy), compile_formula(cfg), cfg.labels, cfg.model, r.grid, std::move(inputs)));
  return r;
}

refinement::SimulationOptions sim_options(const RunConfig& cfg, const SimulationOverrides& o, std::size_t iterations) {
  refinement::SimulationOptions opts;
  opts.runs = o.runs.value_or(cfg.runs);
  opts.seed = o.seed.value_or(cfg.seed);
  opts.confidence = cfg.confidence;
  std::size_t horizon = o.horizon.value_or(cfg.horizon);
  if (horizon == 0) horizon = std::max<std::size_t>(1, 4 * iterations);
  opts.horizon = horizon;
  return opts;
}

double sstar_at(const Refined& r, const Eigen::VectorXd& x0) {
  const auto s = r.grid.locate(x0);
  if (!s) throw InputError("initial state outside the grid");
  return r.sstar[*s];
}

}  // namespace

void cmd_compile_spec(const std::string& formula, const std::vector<std::string>& ap, const fs::path& out,
                      std::ostream& log) {
  const auto f = scltl::parse_formula(formula, ap);
  const auto dfa = scltl::compile_to_dfa(f, ap);
  fs::create_directories(out);
  open_out(out / "dfa.json") << scltl::export_dfa(dfa, scltl::DfaFormat::Json) << '\n';
  open_out(out / "dfa.dot") << scltl::export_dfa(dfa, scltl::DfaFormat::Dot);
  log << "formula " << f.to_string(ap) << ": " << dfa.num_locations() << " locations\n";
}

void cmd_certify(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto cert = certify(cfg);
  fs::create_directories(out);
  write_json(out / "certificate.json", certificate_to_json(cert));

  const auto grid = make_grid(cfg);
  const auto inputs = make_inputs(cfg);
  auto csv = open_out(out / "delta_map.csv");
  for (std::size_t i = 0; i < grid.dim(); ++i) csv << 'x' << i + 1 << ',';
  csv << "u_index,delta\n";
  for (std::size_t s = 0; s < grid.num_cells(); ++s) {
    const Eigen::VectorXd c = grid.center(s);
    for (std::size_t u = 0; u < inputs.size(); ++u) {
      for (Eigen::Index i = 0; i < c.size(); ++i) csv << format_double(c[i]) << ',';
      csv << u << ',' << format_double(cert.delta_at(s, u)) << '\n';
    }
  }
  update_manifest(cfg, out, "certify", {"certificate.json", "delta_map.csv"});
  log << "certificate " << cert.abstract_model << " <= " << cert.concrete_model << ": epsilon "
      << format_double(cert.epsilon) << ", delta " << format_double(cert.delta_global()) << "\n";
}

void cmd_abstract(const RunConfig& cfg, const fs::path& out, const std::optional<fs::path>& dump, std::ostream& log) {
  const auto abs = abstract(cfg);
  fs::create_directories(out);
  ordered_json stats;
  stats["states"] = abs.mdp.num_grid_states();
  stats["inputs"] = abs.mdp.num_inputs();
  stats["nnz"] = abs.mdp.nnz();
  stats["epsilon2"] = abs.certificate.epsilon;
  stats["valid"] = abs.certificate.valid;
  if (const auto* t = std::get_if<ssr::DeltaTable>(&abs.certificate.delta)) {
    stats["delta2"] = {{"min", t->min()}, {"max", t->max()}, {"mean", t->mean()}};
  } else {
    const double d = std::get<double>(abs.certificate.delta);
    stats["delta2"] = {{"min", d}, {"max", d}, {"mean", d}};
  }
  write_json(out / "abstraction.json", stats);
  std::vector<std::string> files{"abstraction.json"};
  if (dump) {
    abs.mdp.write_binary(dump->string());
    files.push_back(dump->string());
  }
  update_manifest(cfg, out, "abstract", files);
  log << stats.dump() << '\n';
}

void cmd_synthesize(const RunConfig& cfg, const fs::path& out, bool force, std::ostream& log) {
  fs::create_directories(out);
  const fs::path cert_path = out / "certificate.json";
  if (!fs::exists(cert_path)) {
    log << "no certificate.json in " << out.string() << "; certifying first\n";
    cmd_certify(cfg, out, log);
  }
  const auto model_cert = certificate_from_json(read_json(cert_path));

  std::ostringstream sweeps;
  auto run = synthesize(cfg, model_cert, force, [&](std::size_t it, double r) {
    sweeps << "sweep " << it << " residual " << format_double(r) << '\n';
  });
  const auto& V = run->result.values;

  auto synth_log = open_out(out / "synthesis.log");
  synth_log << "certificate " << run->certificate.abstract_model << " <= " << run->certificate.concrete_model
            << " epsilon " << format_double(run->certificate.epsilon) << " delta_max "
            << format_double(run->certificate.delta_global()) << '\n';
  synth_log << "consumed " << cert_path.filename().string() << '\n';
  for (const auto& p : run->certificate.provenance) synth_log << "provenance " << p << '\n';
  synth_log << "states " << run->abstraction.mdp.num_grid_states() << " inputs " << run->abstraction.mdp.num_inputs()
            << " locations " << run->dfa.num_locations() << '\n';
  synth_log << sweeps.str();
  synth_log << (V.converged ? "converged" : "iteration cap reached") << " after " << V.iterations
            << " sweeps, residual " << format_double(V.residual) << '\n';

  {
    auto csv = open_out(out / "valuemap.csv");
    synthesis::export_value_map(V, *run->product, run->abstraction.grid, csv);
  }

  ordered_json policy;
  std::vector<std::vector<double>> inputs;
  for (const auto& u : run->abstraction.inputs) inputs.emplace_back(u.data(), u.data() + u.size());
  policy["inputs"] = inputs;
  policy["num_locations"] = run->result.policy.num_locations;
  policy["mu"] = run->result.policy.mu;
  policy["iterations"] = V.iterations;
  policy["converged"] = V.converged;
  write_json(out / "policy.json", policy);
  update_manifest(cfg, out, "synthesize", {"valuemap.csv", "policy.json", "synthesis.log"});

  double best = 0.0;
  for (std::size_t s = 0; s < run->abstraction.mdp.num_grid_states(); ++s) {
    best = std::max(best, synthesis::robust_sat(V, *run->product, s));
  }
  log << "value iteration " << (V.converged ? "converged" : "capped") << " after " << V.iterations
      << " sweeps; max S* " << format_double(best) << '\n';
}

void cmd_simulate(const RunConfig& cfg, const fs::path& out, const SimulationOverrides& overrides, std::ostream& log) {
  const auto r = load_controller(cfg, out);
  const auto opts = sim_options(cfg, overrides, r.iterations);
  const Eigen::VectorXd theta = overrides.theta.value_or(cfg.model.nominal_theta());
  if (static_cast<std::size_t>(theta.size()) != cfg.theta_set.dim()) throw InputError("--theta has the wrong dimension");
  if (!cfg.theta_set.contains(theta)) throw InputError("--theta lies outside the uncertainty set");
  const auto starts = overrides.x0 ? std::vector<Eigen::VectorXd>{*overrides.x0} : initial_states(cfg, r.grid);

  refinement::ValidationReport report;
  report.thetas = {theta};
  for (const auto& x0 : starts) {
    refinement::ValidationEntry e;
    e.x0 = x0;
    e.theta = theta;
    e.outcome = refinement::simulate_closed_loop(*r.ctrl, theta, x0, opts);
    e.sstar = sstar_at(r, x0);
    e.pass = e.outcome.frequency + e.outcome.ci >= e.sstar;
    log << "x0 (" << format_double(x0[0]);
    for (Eigen::Index i = 1; i < x0.size(); ++i) log << ", " << format_double(x0[i]);
    log << "): freq " << format_double(e.outcome.frequency) << " ci " << format_double(e.outcome.ci) << " S* "
        << format_double(e.sstar) << '\n';
    report.entries.push_back(std::move(e));
  }
  auto csv = open_out(out / "simulation.csv");
  refinement::write_report_csv(report, csv);
  update_manifest(cfg, out, "simulate", {"simulation.csv"});
}

void cmd_validate(const RunConfig& cfg, const fs::path& out, const SimulationOverrides& overrides, std::ostream& log) {
  const auto r = load_controller(cfg, out);
  const auto opts = sim_options(cfg, overrides, r.iterations);
  const auto starts = overrides.x0 ? std::vector<Eigen::VectorXd>{*overrides.x0} : initial_states(cfg, r.grid);
  std::vector<double> sstar;
  for (const auto& x0 : starts) sstar.push_back(sstar_at(r, x0));
  const auto report = refinement::validate_bound(*r.ctrl, cfg.theta_set, starts, sstar, opts);
  auto csv = open_out(out / "validation.csv");
  refinement::write_report_csv(report, csv);
  update_manifest(cfg, out, "validate", {"validation.csv"});
  log << "validated " << report.entries.size() << " (x0, theta) pairs, " << opts.runs << " runs each, horizon "
      << opts.horizon << ": pass rate " << format_double(report.pass_rate()) << '\n';
}

}  // namespace robust_synth::app
