#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/abstraction/abstract_mdp.hpp"
#include "robust_synth/abstraction/grid.hpp"
#include "robust_synth/models/labeling.hpp"
#include "robust_synth/scltl/dfa.hpp"
#include "robust_synth/ssr/certificate.hpp"

namespace robust_synth::synthesis {

/// Implicit product of an abstract MDP with a DFA under epsilon-inflated
/// labels. For every grid state s' and location q it caches
/// tau_bar(q, s') = { tau(q, a) : a in L(B_eps(y~(s'))) }.
/// Holds references; the MDP and DFA must outlive it.
class RobustProduct {
public:
  RobustProduct(const abstraction::AbstractMdp& mdp, const scltl::Dfa& dfa, const models::LabelingMap& labels,
                double epsilon);
  /// Letter sets given directly, one non-empty set per grid state.
  RobustProduct(const abstraction::AbstractMdp& mdp, const scltl::Dfa& dfa,
                std::vector<std::vector<scltl::Letter>> letters, double epsilon = 0.0);

  const abstraction::AbstractMdp& mdp() const { return *mdp_; }
  const scltl::Dfa& dfa() const { return *dfa_; }
  double epsilon() const { return epsilon_; }
  std::size_t num_locations() const { return dfa_->num_locations(); }

  const std::vector<scltl::Letter>& letters(std::size_t s) const { return letters_[s]; }
  /// tau_bar(q, s') for a grid state s', sorted and deduplicated.
  std::span<const std::uint32_t> successors(std::size_t s, std::size_t q) const;

private:
  void build();

  const abstraction::AbstractMdp* mdp_;
  const scltl::Dfa* dfa_;
  double epsilon_;
  std::vector<std::vector<scltl::Letter>> letters_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

/// V over (state incl. sink) x location, flat index s * |Q| + q.
struct ValueTable {
  std::size_t num_states = 0;
  std::size_t num_locations = 0;
  std::vector<double> values;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;

  ValueTable() = default;
  ValueTable(std::size_t states, std::size_t locations)
      : num_states(states), num_locations(locations), values(states * locations, 0.0) {}

  double at(std::size_t s, std::size_t q) const { return values[s * num_locations + q]; }
  double& at(std::size_t s, std::size_t q) { return values[s * num_locations + q]; }
};

/// Stationary deterministic policy on grid states; mu[s * |Q| + q] is an input index.
struct Policy {
  std::size_t num_locations = 0;
  std::vector<std::uint32_t> mu;

  std::uint32_t at(std::size_t s, std::size_t q) const { return mu[s * num_locations + q]; }
};

/// One application of the (eps, delta)-robust operator:
///   T(V)(s,q) = max_u L( sum_s' W(s',q) t(s'|s,u) - delta(s,u) ),
///   W(s',q)   = min_{q' in tau_bar(q,s')} max(1_F(q'), V(s',q')),
/// with W = 0 at the sink and L the truncation to [0,1]. When `policy` is
/// given it receives the argmax input (smallest index on ties).
ValueTable robust_bellman_backup(const ValueTable& V, const RobustProduct& product, const ssr::Delta& delta,
                                 Policy* policy = nullptr);

struct IterationOptions {
  double tolerance = 1e-6;
  std::size_t max_iterations = 5000;
  /// Called after every sweep with (sweep number, sup-norm change).
  std::function<void(std::size_t, double)> on_sweep;
};

struct SynthesisResult {
  ValueTable values;
  Policy policy;
  std::vector<double> residuals;
};

/// Jacobi iteration from V0 = 0 until the sup-norm change drops below the
/// tolerance or the cap is hit. Iterates are nondecreasing, so a capped
/// result is still a lower bound; `values.converged` records which case.
SynthesisResult value_iterate(const RobustProduct& product, const ssr::Delta& delta,
                              const IterationOptions& options = {});

/// Robust satisfaction S* = min_{q in tau_bar(q0, s0)} max(1_F(q), V(s0, q)).
double robust_sat(const ValueTable& V, const RobustProduct& product, std::size_t s0);
/// Same for the grid state containing x0; throws InputError outside the grid.
double robust_sat(const ValueTable& V, const RobustProduct& product, const abstraction::Grid& grid,
                  const Eigen::VectorXd& x0);

/// CSV "x1,...,xn,satprob" with one row per grid center.
void export_value_map(const ValueTable& V, const RobustProduct& product, const abstraction::Grid& grid,
                      std::ostream& out);

/// Shortest round-trip decimal rendering, used for all CSV output.
std::string format_double(double v);

}  // namespace robust_synth::synthesis
