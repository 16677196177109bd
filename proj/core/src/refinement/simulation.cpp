#include "robust_synth/refinement/simulation.hpp"

#include <cmath>
#include <ostream>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"
#include "robust_synth/models/gaussian.hpp"
#include "robust_synth/refinement/rng.hpp"
#include "robust_synth/ssr/coupling.hpp"
#include "robust_synth/synthesis/value_iteration.hpp"

namespace robust_synth::refinement {

double wilson_radius(std::size_t successes, std::size_t runs, double confidence) {
  if (runs == 0) return 0.0;
  if (!(confidence > 0.0 && confidence < 1.0)) throw InputError("confidence must lie in (0,1)");
  const double z = models::std_normal_quantile(0.5 + 0.5 * confidence);
  const double n = double(runs);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return std::max(0.0, std::min(1.0, center + half) - p);
}

SimulationOutcome simulate_closed_loop(const RefinedController& ctrl, const Eigen::VectorXd& theta,
                                       const Eigen::VectorXd& x0, const SimulationOptions& options) {
  const auto& model = ctrl.model();
  if (static_cast<std::size_t>(x0.size()) != model.state_dim()) throw InputError("x0 has the wrong dimension");
  SimulationOutcome out;
  out.runs = options.runs;
  out.horizon = options.horizon;
  if (options.runs == 0) return out;

  const CounterRng rng(options.seed);
  const std::size_t n = model.state_dim();
  // 0 = failure, 1 = success, 2 = failure by excursion.
  std::vector<unsigned char> result(options.runs, 0);
  parallel_for(options.runs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      ControllerState st = ctrl.start(x0);
      unsigned char verdict = 0;
      for (std::size_t k = 0;; ++k) {
        if (ctrl.accepted(st)) {
          verdict = 1;
          break;
        }
        if (st.excursion) {
          verdict = 2;
          break;
        }
        if (k == options.horizon || ctrl.rejected(st)) break;
        const Eigen::VectorXd w = rng.normal_vector(r, k, n);
        ctrl.advance(st, models::step(model, st.x, ctrl.input(st), theta, w));
      }
      result[r] = verdict;
    }
  });
  for (auto v : result) {
    out.successes += v == 1;
    out.excursions += v == 2;
  }
  out.frequency = double(out.successes) / double(out.runs);
  out.ci = wilson_radius(out.successes, out.runs, options.confidence);
  return out;
}

double ValidationReport::pass_rate() const {
  if (entries.empty()) return 0.0;
  std::size_t passed = 0;
  for (const auto& e : entries) passed += e.pass;
  return double(passed) / double(entries.size());
}

std::vector<Eigen::VectorXd> validation_thetas(const models::UncertaintyBox& theta_set,
                                               const Eigen::VectorXd& theta0, std::size_t interior,
                                               std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out = theta_set.vertices();
  out.push_back(theta0);
  const CounterRng rng(seed ^ 0x7468657461ULL);
  const auto& box = theta_set.box();
  for (std::size_t j = 0; j < interior; ++j) {
    Eigen::VectorXd t(static_cast<Eigen::Index>(box.dim()));
    for (std::size_t i = 0; i < box.dim(); ++i) {
      t[static_cast<Eigen::Index>(i)] = box.lo(i) + box.width(i) * rng.uniform(0, j, i);
    }
    out.push_back(std::move(t));
  }
  return out;
}

ValidationReport validate_bound(const RefinedController& ctrl, const models::UncertaintyBox& theta_set,
                                const std::vector<Eigen::VectorXd>& initial_states,
                                const std::vector<double>& sstar, const SimulationOptions& options,
                                std::size_t interior_samples) {
  if (initial_states.size() != sstar.size()) throw InputError("one certified value per initial state required");
  ValidationReport report;
  report.thetas = validation_thetas(theta_set, ctrl.model().nominal_theta(), interior_samples, options.seed);
  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    for (std::size_t t = 0; t < report.thetas.size(); ++t) {
      ValidationEntry e;
      e.x0 = initial_states[i];
      e.theta_id = t;
      e.theta = report.thetas[t];
      e.outcome = simulate_closed_loop(ctrl, e.theta, e.x0, options);
      e.sstar = sstar[i];
      e.pass = e.outcome.frequency + e.outcome.ci >= e.sstar;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

void write_report_csv(const ValidationReport& report, std::ostream& out) {
  const std::size_t n = report.entries.empty() ? 2 : static_cast<std::size_t>(report.entries.front().x0.size());
  for (std::size_t i = 0; i < n; ++i) out << 'x' << i + 1 << ',';
  out << "theta_id,freq,ci,sstar,pass\n";
  using synthesis::format_double;
  for (const auto& e : report.entries) {
    for (Eigen::Index i = 0; i < e.x0.size(); ++i) out << format_double(e.x0[i]) << ',';
    out << e.theta_id << ',' << format_double(e.outcome.frequency) << ',' << format_double(e.outcome.ci) << ','
        << format_double(e.sstar) << ',' << (e.pass ? 1 : 0) << '\n';
  }
}

RefinementCheck check_refinement_validity(const models::SystemModel& model, const Eigen::VectorXd& theta,
                                          const Eigen::VectorXd& x, const Eigen::VectorXd& u, std::size_t samples,
                                          std::uint64_t seed) {
  const Eigen::VectorXd concrete_mean = model.mean(x, u, theta);
  const Eigen::VectorXd nominal_mean = model.mean(x, u, model.nominal_theta());
  const Eigen::VectorXd m = model.noise_factor_inverse() * (concrete_mean - nominal_mean);
  const std::size_t n = model.state_dim();

  RefinementCheck out;
  out.samples = samples;
  out.certified_mass = ssr::coupling_mass(m);
  out.sigma = samples == 0 ? 0.0 : std::sqrt(out.certified_mass * (1 - out.certified_mass) / double(samples));
  if (samples == 0) return out;

  const CounterRng rng(seed);
  std::vector<unsigned char> kept(samples, 0);
  parallel_for(samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Eigen::VectorXd w = rng.normal_vector(i, 0, n);
      const Eigen::VectorXd x_next = concrete_mean + model.noise_factor() * w;
      if (rng.uniform(i, 1, 0) >= ssr::coupling_acceptance(w, m)) continue;
      // Accepted: the nominal noise is w + m, so the nominal successor coincides.
      const Eigen::VectorXd w_hat = w + m;
      const Eigen::VectorXd x_hat_next = nominal_mean + model.noise_factor() * w_hat;
      // State mapping from x = x_hat reduces to x_hat+ = x+.
      kept[i] = (x_hat_next - x_next).norm() <= 1e-9 * (1.0 + x_next.norm());
    }
  });
  for (auto k : kept) out.coupled += k;
  out.frequency = double(out.coupled) / double(samples);
  return out;
}

}  // namespace robust_synth::refinement
