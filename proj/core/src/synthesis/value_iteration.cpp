#include "robust_synth/synthesis/value_iteration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"

namespace robust_synth::synthesis {

RobustProduct::RobustProduct(const abstraction::AbstractMdp& mdp, const scltl::Dfa& dfa,
                             const models::LabelingMap& labels, double epsilon)
    : mdp_(&mdp), dfa_(&dfa), epsilon_(epsilon) {
  if (labels.ap() != dfa.ap()) throw InputError("labeling and automaton use different proposition lists");
  if (!(epsilon >= 0.0)) throw InputError("epsilon must be nonnegative");
  letters_.resize(mdp.num_grid_states());
  for (std::size_t s = 0; s < mdp.num_grid_states(); ++s) letters_[s] = labels.ball_letters(mdp.output(s), epsilon);
  build();
}

RobustProduct::RobustProduct(const abstraction::AbstractMdp& mdp, const scltl::Dfa& dfa,
                             std::vector<std::vector<scltl::Letter>> letters, double epsilon)
    : mdp_(&mdp), dfa_(&dfa), epsilon_(epsilon), letters_(std::move(letters)) {
  if (letters_.size() != mdp.num_grid_states()) throw InputError("one letter set per grid state required");
  for (const auto& set : letters_) {
    if (set.empty()) throw InputError("letter sets must be non-empty");
    for (auto a : set) {
      if (a.index() >= dfa.alphabet_size()) throw InputError("letter outside the automaton alphabet");
    }
  }
  build();
}

void RobustProduct::build() {
  const std::size_t nq = dfa_->num_locations();
  offsets_.assign(1, 0);
  offsets_.reserve(letters_.size() * nq + 1);
  std::vector<std::uint32_t> buf;
  for (const auto& set : letters_) {
    for (std::size_t q = 0; q < nq; ++q) {
      buf.clear();
      for (auto a : set) buf.push_back(static_cast<std::uint32_t>(dfa_->next(q, a)));
      std::sort(buf.begin(), buf.end());
      buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
      targets_.insert(targets_.end(), buf.begin(), buf.end());
      offsets_.push_back(static_cast<std::uint32_t>(targets_.size()));
    }
  }
}

std::span<const std::uint32_t> RobustProduct::successors(std::size_t s, std::size_t q) const {
  const std::size_t k = s * dfa_->num_locations() + q;
  return {targets_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

namespace {

void check_delta(const ssr::Delta& delta, const abstraction::AbstractMdp& mdp) {
  if (const auto* t = std::get_if<ssr::DeltaTable>(&delta)) {
    if (t->num_states() != mdp.num_grid_states() || t->num_inputs() != mdp.num_inputs()) {
      throw InputError("delta table is " + std::to_string(t->num_states()) + "x" + std::to_string(t->num_inputs()) +
                       ", abstraction is " + std::to_string(mdp.num_grid_states()) + "x" +
                       std::to_string(mdp.num_inputs()));
    }
  }
}

double delta_of(const ssr::Delta& delta, std::size_t s, std::size_t u) {
  if (const auto* t = std::get_if<ssr::DeltaTable>(&delta)) return t->at(s, u);
  return std::get<double>(delta);
}

// W(s', q) for grid states; the sink entries stay 0.
std::vector<double> worst_successor_values(const ValueTable& V, const RobustProduct& product) {
  const auto& dfa = product.dfa();
  const std::size_t nq = dfa.num_locations();
  const std::size_t ns = product.mdp().num_grid_states();
  std::vector<double> W((ns + 1) * nq, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t q = 0; q < nq; ++q) {
      double w = 1.0;
      for (auto qn : product.successors(s, q)) w = std::min(w, dfa.is_accepting(qn) ? 1.0 : V.at(s, qn));
      W[s * nq + q] = w;
    }
  }
  return W;
}

}  // namespace

ValueTable robust_bellman_backup(const ValueTable& V, const RobustProduct& product, const ssr::Delta& delta,
                                 Policy* policy) {
  const auto& mdp = product.mdp();
  const std::size_t nq = product.num_locations();
  const std::size_t ns = mdp.num_grid_states();
  const std::size_t nu = mdp.num_inputs();
  if (V.num_states != mdp.num_states() || V.num_locations != nq) throw InputError("value table shape mismatch");
  check_delta(delta, mdp);

  const std::vector<double> W = worst_successor_values(V, product);
  ValueTable out(mdp.num_states(), nq);
  if (policy) {
    policy->num_locations = nq;
    policy->mu.assign(ns * nq, 0);
  }
  parallel_for(ns, [&](std::size_t begin, std::size_t end) {
    std::vector<double> sums(nq), best(nq);
    std::vector<std::uint32_t> arg(nq);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(best.begin(), best.end(), -std::numeric_limits<double>::infinity());
      std::fill(arg.begin(), arg.end(), 0);
      for (std::size_t u = 0; u < nu; ++u) {
        std::fill(sums.begin(), sums.end(), 0.0);
        const auto row = mdp.row(s, u);
        for (std::size_t k = 0; k < row.cols.size(); ++k) {
          const double p = row.probs[k];
          const double* w = W.data() + std::size_t{row.cols[k]} * nq;
          for (std::size_t q = 0; q < nq; ++q) sums[q] += p * w[q];
        }
        const double d = delta_of(delta, s, u);
        for (std::size_t q = 0; q < nq; ++q) {
          const double raw = sums[q] - d;
          if (raw > best[q]) {
            best[q] = raw;
            arg[q] = static_cast<std::uint32_t>(u);
          }
        }
      }
      for (std::size_t q = 0; q < nq; ++q) {
        out.at(s, q) = std::clamp(best[q], 0.0, 1.0);
        if (policy) policy->mu[s * nq + q] = arg[q];
      }
    }
  });
  return out;
}

SynthesisResult value_iterate(const RobustProduct& product, const ssr::Delta& delta,
                              const IterationOptions& options) {
  check_delta(delta, product.mdp());
  SynthesisResult result;
  ValueTable V(product.mdp().num_states(), product.num_locations());
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    ValueTable next = robust_bellman_backup(V, product, delta, &result.policy);
    double change = 0.0;
    for (std::size_t i = 0; i < V.values.size(); ++i) change = std::max(change, std::abs(next.values[i] - V.values[i]));
    V = std::move(next);
    V.iterations = it;
    V.residual = change;
    result.residuals.push_back(change);
    if (options.on_sweep) options.on_sweep(it, change);
    if (change < options.tolerance) {
      V.converged = true;
      break;
    }
  }
  if (options.max_iterations == 0) {
    robust_bellman_backup(V, product, delta, &result.policy);
  }
  result.values = std::move(V);
  return result;
}

double robust_sat(const ValueTable& V, const RobustProduct& product, std::size_t s0) {
  if (s0 >= product.mdp().num_grid_states()) throw InputError("initial state outside the grid");
  const auto& dfa = product.dfa();
  double worst = 1.0;
  for (auto a : product.letters(s0)) {
    const std::size_t q = dfa.next(dfa.initial(), a);
    worst = std::min(worst, dfa.is_accepting(q) ? 1.0 : V.at(s0, q));
  }
  return worst;
}

double robust_sat(const ValueTable& V, const RobustProduct& product, const abstraction::Grid& grid,
                  const Eigen::VectorXd& x0) {
  const auto s0 = grid.locate(x0);
  if (!s0) throw InputError("initial state outside the grid");
  return robust_sat(V, product, *s0);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void export_value_map(const ValueTable& V, const RobustProduct& product, const abstraction::Grid& grid,
                      std::ostream& out) {
  if (grid.num_cells() != product.mdp().num_grid_states()) throw InputError("grid does not match the abstraction");
  for (std::size_t i = 0; i < grid.dim(); ++i) out << 'x' << i + 1 << ',';
  out << "satprob\n";
  for (std::size_t s = 0; s < grid.num_cells(); ++s) {
    const Eigen::VectorXd c = grid.center(s);
    for (Eigen::Index i = 0; i < c.size(); ++i) out << format_double(c[i]) << ',';
    out << format_double(robust_sat(V, product, s)) << '\n';
  }
}

}  // namespace robust_synth::synthesis
