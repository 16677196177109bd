#pragma once

// Random instances shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/abstraction/abstract_mdp.hpp"
#include "robust_synth/scltl/dfa.hpp"
#include "robust_synth/scltl/formula.hpp"

namespace rs_test {

using robust_synth::scltl::Formula;
using robust_synth::scltl::Letter;
using robust_synth::scltl::Word;

inline Formula random_formula(std::mt19937_64& rng, std::size_t num_props, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
  std::uniform_int_distribution<std::size_t> prop(0, num_props - 1);
  switch (pick(rng)) {
    case 0: return Formula::atom(prop(rng));
    case 1: return Formula::not_atom(prop(rng));
    case 2: return Formula::atom(prop(rng));
    case 3: return rng() % 8 == 0 ? Formula::truth() : Formula::not_atom(prop(rng));
    case 4:
    case 5: return Formula::until(random_formula(rng, num_props, depth - 1), random_formula(rng, num_props, depth - 1));
    case 6: return Formula::conj({random_formula(rng, num_props, depth - 1), random_formula(rng, num_props, depth - 1)});
    case 7: return Formula::disj({random_formula(rng, num_props, depth - 1), random_formula(rng, num_props, depth - 1)});
    case 8: return Formula::next(random_formula(rng, num_props, depth - 1));
    default: return Formula::eventually(random_formula(rng, num_props, depth - 1));
  }
}

inline Word random_word(std::mt19937_64& rng, std::size_t num_props, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> bits(0, (1U << num_props) - 1);
  Word w(len(rng));
  for (auto& a : w) a = Letter{bits(rng)};
  return w;
}

inline std::vector<std::string> ap_names(std::size_t n) {
  std::vector<std::string> ap;
  for (std::size_t i = 0; i < n; ++i) ap.push_back("p" + std::to_string(i + 1));
  return ap;
}

using Rows = std::vector<std::vector<std::vector<std::pair<std::uint32_t, double>>>>;

/// Random sparse rows over `ns` grid states with up to `fanout` targets and a
/// random share of mass sent to the sink.
inline Rows random_rows(std::mt19937_64& rng, std::size_t ns, std::size_t nu, std::size_t fanout) {
  std::uniform_int_distribution<std::uint32_t> target(0, static_cast<std::uint32_t>(ns - 1));
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::uniform_int_distribution<std::size_t> k(1, fanout);
  Rows rows(ns, std::vector<std::vector<std::pair<std::uint32_t, double>>>(nu));
  for (auto& per_state : rows) {
    for (auto& row : per_state) {
      std::vector<std::uint32_t> cols;
      const std::size_t n = k(rng);
      for (std::size_t i = 0; i < n; ++i) cols.push_back(target(rng));
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      std::vector<double> w;
      double sum = 0.0;
      for (std::size_t i = 0; i < cols.size(); ++i) sum += w.emplace_back(weight(rng));
      const bool leak = rng() % 4 == 0;
      if (leak) sum += weight(rng);
      double used = 0.0;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        row.emplace_back(cols[i], w[i] / sum);
        used += w[i] / sum;
      }
      if (leak) row.emplace_back(static_cast<std::uint32_t>(ns), 1.0 - used);
      // Absorb rounding so the row sums to 1 within 1e-12.
      if (!leak) row.back().second += 1.0 - used;
    }
  }
  return rows;
}

inline robust_synth::abstraction::AbstractMdp random_mdp(std::mt19937_64& rng, std::size_t ns, std::size_t nu,
                                                         std::size_t fanout) {
  std::vector<Eigen::VectorXd> outputs(ns, Eigen::VectorXd::Zero(1));
  return robust_synth::abstraction::AbstractMdp::from_rows(random_rows(rng, ns, nu, fanout), outputs);
}

/// Standard value iteration on the explicit product with exact labels:
/// V(s,q) = 1 for accepting q, 0 at the sink, else max_u sum p V(s', tau(q, L(s'))).
/// Returns V after `sweeps` Jacobi sweeps, indexed s * |Q| + q over grid states.
inline std::vector<double> plain_reachability(const robust_synth::abstraction::AbstractMdp& mdp,
                                              const robust_synth::scltl::Dfa& dfa,
                                              const std::vector<Letter>& labels, std::size_t sweeps) {
  const std::size_t ns = mdp.num_grid_states();
  const std::size_t nq = dfa.num_locations();
  auto value = [&](const std::vector<double>& V, std::size_t s, std::size_t q) {
    if (s == ns) return 0.0;
    if (dfa.is_accepting(q)) return 1.0;
    return V[s * nq + q];
  };
  std::vector<double> V(ns * nq, 0.0);
  for (std::size_t it = 0; it < sweeps; ++it) {
    std::vector<double> next(ns * nq, 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t q = 0; q < nq; ++q) {
        double best = 0.0;
        for (std::size_t u = 0; u < mdp.num_inputs(); ++u) {
          const auto row = mdp.row(s, u);
          double sum = 0.0;
          for (std::size_t k = 0; k < row.cols.size(); ++k) {
            const std::size_t t = row.cols[k];
            const std::size_t qn = t == ns ? q : dfa.next(q, labels[t]);
            sum += row.probs[k] * value(V, t, qn);
          }
          best = std::max(best, sum);
        }
        next[s * nq + q] = best;
      }
    }
    V = std::move(next);
  }
  return V;
}

}  // namespace rs_test
