#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "robust_synth/abstraction/builder.hpp"
#include "robust_synth/refinement/controller.hpp"
#include "robust_synth/scltl/dfa.hpp"
#include "robust_synth/ssr/certificate.hpp"
#include "robust_synth/synthesis/value_iteration.hpp"
#include "run_config.hpp"

namespace robust_synth::app {

scltl::Dfa compile_formula(const RunConfig& cfg);
abstraction::Grid make_grid(const RunConfig& cfg);
std::vector<Eigen::VectorXd> make_inputs(const RunConfig& cfg);

/// nominal <= concrete: the global vertex delta for linear models, the
/// per-(cell, input) table for nonlinear ones.
ssr::SsrCertificate certify(const RunConfig& cfg);

abstraction::Abstraction abstract(const RunConfig& cfg);

/// Everything produced by synthesis; heap allocated because the product
/// refers to the abstraction and automaton it owns.
struct SynthesisRun {
  abstraction::Abstraction abstraction;
  scltl::Dfa dfa;
  /// grid <= concrete
  ssr::SsrCertificate certificate;
  std::unique_ptr<synthesis::RobustProduct> product;
  synthesis::SynthesisResult result;
};

/// Composes `model_cert` with the abstraction certificate and runs robust
/// value iteration. Throws NumericError for an invalid certificate unless
/// `force` is set.
std::unique_ptr<SynthesisRun> synthesize(const RunConfig& cfg, const ssr::SsrCertificate& model_cert, bool force,
                                         const std::function<void(std::size_t, double)>& on_sweep = {});

/// Default initial states: a 5x5 (per 2-D) lattice of grid centers spread
/// evenly over the grid, or the configured list.
std::vector<Eigen::VectorXd> initial_states(const RunConfig& cfg, const abstraction::Grid& grid);

nlohmann::ordered_json certificate_to_json(const ssr::SsrCertificate& cert);
ssr::SsrCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace robust_synth::app
