#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/models/system_model.hpp"
#include "robust_synth/models/uncertainty.hpp"
#include "robust_synth/refinement/controller.hpp"

namespace robust_synth::refinement {

struct SimulationOptions {
  std::size_t runs = 1000;
  std::size_t horizon = 100;
  std::uint64_t seed = 1;
  /// Two-sided confidence level of the reported radius.
  double confidence = 0.99;
};

struct SimulationOutcome {
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::size_t excursions = 0;
  std::size_t horizon = 0;
  double frequency = 0.0;
  /// Wilson upper bound minus the frequency.
  double ci = 0.0;
};

/// Monte-Carlo estimate of P(controller x M(theta) reaches acceptance within
/// the horizon). Run r draws its noise at step k from the stream (seed, r, k),
/// so outcomes are independent of the thread count and shared across theta.
SimulationOutcome simulate_closed_loop(const RefinedController& ctrl, const Eigen::VectorXd& theta,
                                       const Eigen::VectorXd& x0, const SimulationOptions& options);

/// Upper end of the Wilson score interval minus successes/runs; 0 for no runs.
double wilson_radius(std::size_t successes, std::size_t runs, double confidence);

struct ValidationEntry {
  Eigen::VectorXd x0;
  std::size_t theta_id = 0;
  Eigen::VectorXd theta;
  SimulationOutcome outcome;
  double sstar = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<Eigen::VectorXd> thetas;
  std::vector<ValidationEntry> entries;
  double pass_rate() const;
};

/// Parameters tried by validate_bound: the vertices of Theta, theta0, then
/// `interior` uniform samples drawn from a stream derived from `seed`.
std::vector<Eigen::VectorXd> validation_thetas(const models::UncertaintyBox& theta_set,
                                               const Eigen::VectorXd& theta0, std::size_t interior,
                                               std::uint64_t seed);

/// Simulates every (x0, theta) pair and marks it passed when
/// frequency + ci >= sstar. `sstar[i]` belongs to `initial_states[i]`.
ValidationReport validate_bound(const RefinedController& ctrl, const models::UncertaintyBox& theta_set,
                                const std::vector<Eigen::VectorXd>& initial_states,
                                const std::vector<double>& sstar, const SimulationOptions& options,
                                std::size_t interior_samples = 8);

/// CSV "x1,x2,theta_id,freq,ci,sstar,pass" (one x column per state dimension).
void write_report_csv(const ValidationReport& report, std::ostream& out);

struct RefinementCheck {
  std::size_t samples = 0;
  std::size_t coupled = 0;
  double frequency = 0.0;
  /// coupling_mass(R^-1 gamma)
  double certified_mass = 0.0;
  /// Binomial standard deviation at the certified mass.
  double sigma = 0.0;
};

/// One coupled step from x = x_hat under u: the concrete successor uses noise
/// w, the nominal one w_hat = w + R^-1 gamma with
/// gamma = f(x,u;theta) - f(x,u;theta0), and the pair is kept in the identity
/// relation when a uniform draw falls below min(1, N(w;-R^-1 gamma,I)/N(w;0,I)).
/// Returns the fraction of samples that end in the relation.
RefinementCheck check_refinement_validity(const models::SystemModel& model, const Eigen::VectorXd& theta,
                                          const Eigen::VectorXd& x, const Eigen::VectorXd& u, std::size_t samples,
                                          std::uint64_t seed);

}  // namespace robust_synth::refinement
