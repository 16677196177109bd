#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"
#include "robust_synth/models/uncertainty.hpp"

namespace robust_synth::models {

/// Dynamics evaluator for x+ = f(x, u; theta) + R w, y = h(x).
/// Implementations must be re-entrant.
class NonlinearDynamics {
public:
  virtual ~NonlinearDynamics() = default;

  virtual std::string name() const = 0;
  virtual std::size_t state_dim() const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t param_dim() const = 0;
  virtual std::size_t output_dim() const = 0;

  virtual Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const = 0;
  virtual Eigen::VectorXd h(const Eigen::VectorXd& x) const = 0;
  /// Lipschitz constant of h in the Euclidean norm.
  virtual double output_lipschitz() const = 0;

  /// d(x,u) >= sup_{theta in Theta} ||f(x,u;theta) - f(x,u;theta0)||.
  virtual double disturbance_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& theta0, const UncertaintyBox& theta_set) const = 0;
  /// Upper bound of disturbance_bound over every x in `cell`.
  virtual double disturbance_bound(const Box& cell, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                                   const UncertaintyBox& theta_set) const = 0;
  /// Unit vector spanning all offsets f(.;theta) - f(.;theta0), when they lie on one line.
  virtual std::optional<Eigen::VectorXd> offset_direction() const { return std::nullopt; }

  /// Entrywise M >= |df/dx| over every x in `cell`.
  virtual Eigen::MatrixXd jacobian_bound(const Box& cell, const Eigen::VectorXd& u,
                                         const Eigen::VectorXd& theta) const = 0;
};

/// A registered dynamics evaluator together with its noise factor R and
/// nominal parameter theta0.
class NonlinearModel {
public:
  NonlinearModel(std::shared_ptr<const NonlinearDynamics> dynamics, Eigen::MatrixXd R, Eigen::VectorXd theta0);

  const NonlinearDynamics& dynamics() const { return *dynamics_; }
  std::shared_ptr<const NonlinearDynamics> dynamics_ptr() const { return dynamics_; }
  const Eigen::MatrixXd& noise_factor() const { return R_; }
  const Eigen::MatrixXd& noise_factor_inverse() const { return R_inv_; }
  const Eigen::VectorXd& nominal_theta() const { return theta0_; }

  std::size_t state_dim() const { return dynamics_->state_dim(); }
  std::size_t input_dim() const { return dynamics_->input_dim(); }
  std::size_t output_dim() const { return dynamics_->output_dim(); }

  Eigen::VectorXd mean(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const {
    return dynamics_->f(x, u, theta);
  }
  Eigen::VectorXd output(const Eigen::VectorXd& x) const { return dynamics_->h(x); }

private:
  std::shared_ptr<const NonlinearDynamics> dynamics_;
  Eigen::MatrixXd R_, R_inv_;
  Eigen::VectorXd theta0_;
};

/// x+ = A x + B u + theta behind the nonlinear interface; lets linear systems
/// use the Lipschitz-based abstraction path.
class AffineDynamics final : public NonlinearDynamics {
public:
  AffineDynamics(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C);

  std::string name() const override { return "affine"; }
  std::size_t state_dim() const override { return static_cast<std::size_t>(A_.rows()); }
  std::size_t input_dim() const override { return static_cast<std::size_t>(B_.cols()); }
  std::size_t param_dim() const override { return state_dim(); }
  std::size_t output_dim() const override { return static_cast<std::size_t>(C_.rows()); }

  Eigen::VectorXd f(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const override {
    return A_ * x + B_ * u + theta;
  }
  Eigen::VectorXd h(const Eigen::VectorXd& x) const override { return C_ * x; }
  double output_lipschitz() const override { return c_norm_; }
  double disturbance_bound(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                           const UncertaintyBox& theta_set) const override;
  double disturbance_bound(const Box& cell, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                           const UncertaintyBox& theta_set) const override;
  Eigen::MatrixXd jacobian_bound(const Box&, const Eigen::VectorXd&, const Eigen::VectorXd&) const override {
    return A_.cwiseAbs();
  }

private:
  Eigen::MatrixXd A_, B_, C_;
  double c_norm_;
};

/// Builds a registered nonlinear dynamics evaluator by name. Known names:
/// "vanderpol" (parameter "tau", default 0.1). Throws InputError otherwise.
std::shared_ptr<const NonlinearDynamics> make_dynamics(const std::string& name,
                                                       const std::map<std::string, double>& params);

}  // namespace robust_synth::models
