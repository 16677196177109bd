#pragma once

#include "robust_synth/models/nonlinear_model.hpp"

namespace robust_synth::models {

/// Sampled Van der Pol oscillator
///   x1+ = x1 + tau x2
///   x2+ = x2 + tau (-x1 + theta (1 - x1^2) x2) + u
/// with identity output. The parameter offset only moves x2+.
class VanDerPol final : public NonlinearDynamics {
public:
  explicit VanDerPol(double tau = 0.1);

  double tau() const { return tau_; }

  std::string name() const override { return "vanderpol"; }
  std::size_t state_dim() const override { return 2; }
  std::size_t input_dim() const override { return 1; }
  std::size_t param_dim() const override { return 1; }
  std::size_t output_dim() const override { return 2; }

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const override;
  Eigen::VectorXd h(const Eigen::VectorXd& x) const override { return x; }
  double output_lipschitz() const override { return 1.0; }

  double disturbance_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                           const UncertaintyBox& theta_set) const override;
  double disturbance_bound(const Box& cell, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                           const UncertaintyBox& theta_set) const override;
  std::optional<Eigen::VectorXd> offset_direction() const override;
  Eigen::MatrixXd jacobian_bound(const Box& cell, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const override;

private:
  double tau_;
};

/// tau * max_{theta in Theta} |theta0 - theta| * |(1 - x1^2) x2|.
double vdp_disturbance_bound(const Eigen::VectorXd& x, const UncertaintyBox& theta_set, double tau, double theta0 = 1.0);

}  // namespace robust_synth::models
