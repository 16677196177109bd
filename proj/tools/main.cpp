#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"

namespace fs = std::filesystem;
using namespace robust_synth;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty proposition name in --ap");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Robust abstraction-based controller synthesis for parametric stochastic systems"};
  cli.require_subcommand(1);
  unsigned threads = 0;
  cli.add_option("--threads", threads, "Worker threads (default: ROBUST_SYNTH_THREADS, else all cores)");

  std::string config_path;
  std::string out_dir;
  auto add_config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-c,--config", config_path, "Experiment configuration (JSON)");
    if (required) opt->required();
    sub->add_option("-o,--out", out_dir, "Run directory (default: the config's \"output\")");
  };

  auto* compile = cli.add_subcommand("compile-spec", "Compile an scLTL formula to a DFA (dfa.json, dfa.dot)");
  std::string formula, ap_text;
  compile->add_option("-f,--formula", formula, "Formula text, e.g. \"(!p2) U p1\"");
  compile->add_option("--ap", ap_text, "Comma separated proposition order");
  add_config(compile, false);

  auto* certify = cli.add_subcommand("certify", "Nominal-vs-parametric certificate (certificate.json, delta_map.csv)");
  add_config(certify, true);

  auto* abstract = cli.add_subcommand("abstract", "Grid abstraction statistics (abstraction.json)");
  add_config(abstract, true);
  std::string dump;
  abstract->add_option("--dump", dump, "Write the compressed transition rows to this file");

  auto* synthesize = cli.add_subcommand("synthesize", "Robust value iteration (valuemap.csv, policy.json)");
  add_config(synthesize, true);
  bool force = false;
  synthesize->add_flag("--force", force, "Synthesize even if the certificate is invalid");

  app::SimulationOverrides overrides;
  std::string theta_text, x0_text;
  std::size_t runs = 0, horizon = 0;
  std::uint64_t seed = 0;
  auto add_sim = [&](CLI::App* sub) {
    add_config(sub, true);
    sub->add_option("--theta", theta_text, "Parameter value \"v1,v2\" (default theta0)");
    sub->add_option("--x0", x0_text, "Initial state \"a,b\" (default: configured initial states)");
    sub->add_option("--runs", runs, "Monte-Carlo runs per (x0, theta)");
    sub->add_option("--horizon", horizon, "Steps per run");
    sub->add_option("--seed", seed, "Noise stream seed");
  };
  auto* simulate = cli.add_subcommand("simulate", "Closed-loop simulation at one parameter (simulation.csv)");
  add_sim(simulate);
  auto* validate = cli.add_subcommand("validate", "Check the certified bound over Theta (validation.csv)");
  add_sim(validate);

  CLI11_PARSE(cli, argc, argv);

  try {
    if (threads > 0) set_thread_count(threads);
    std::optional<app::RunConfig> cfg;
    if (!config_path.empty()) cfg = app::load_config(config_path);
    const fs::path out = !out_dir.empty() ? fs::path(out_dir) : cfg ? cfg->output_dir : fs::path("run");

    if (compile->parsed()) {
      if (!formula.empty()) {
        if (ap_text.empty()) throw InputError("--formula needs --ap");
        app::cmd_compile_spec(formula, split_names(ap_text), out, std::cout);
      } else if (cfg) {
        app::cmd_compile_spec(cfg->formula, cfg->ap, out, std::cout);
      } else {
        throw InputError("compile-spec needs --formula/--ap or --config");
      }
      return 0;
    }
    if (certify->parsed()) app::cmd_certify(*cfg, out, std::cout);
    if (abstract->parsed()) {
      app::cmd_abstract(*cfg, out, dump.empty() ? std::nullopt : std::optional<fs::path>(dump), std::cout);
    }
    if (synthesize->parsed()) app::cmd_synthesize(*cfg, out, force, std::cout);
    if (simulate->parsed() || validate->parsed()) {
      if (!theta_text.empty()) overrides.theta = app::parse_vector(theta_text);
      if (!x0_text.empty()) overrides.x0 = app::parse_vector(x0_text);
      auto* sub = simulate->parsed() ? simulate : validate;
      if (sub->count("--runs")) overrides.runs = runs;
      if (sub->count("--horizon")) overrides.horizon = horizon;
      if (sub->count("--seed")) overrides.seed = seed;
      if (simulate->parsed()) {
        app::cmd_simulate(*cfg, out, overrides, std::cout);
      } else {
        app::cmd_validate(*cfg, out, overrides, std::cout);
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return 0;
}
