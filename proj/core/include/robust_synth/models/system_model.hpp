#pragma once

#include <variant>

#include <Eigen/Dense>

#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/nonlinear_model.hpp"

namespace robust_synth::models {

/// The parametric plant M(theta): either the linear additive-uncertainty
/// model or a registered nonlinear model. Immutable and shareable.
class SystemModel {
public:
  SystemModel(LinearModel m) : model_(std::move(m)) {}      // NOLINT(google-explicit-constructor)
  SystemModel(NonlinearModel m) : model_(std::move(m)) {}   // NOLINT(google-explicit-constructor)

  bool is_linear() const { return std::holds_alternative<LinearModel>(model_); }
  const LinearModel& linear() const { return std::get<LinearModel>(model_); }
  const NonlinearModel& nonlinear() const { return std::get<NonlinearModel>(model_); }

  std::size_t state_dim() const;
  std::size_t input_dim() const;
  std::size_t output_dim() const;
  const Eigen::MatrixXd& noise_factor() const;
  const Eigen::MatrixXd& noise_factor_inverse() const;
  const Eigen::VectorXd& nominal_theta() const;

  /// f(x, u; theta): the noise-free successor.
  Eigen::VectorXd mean(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const;
  Eigen::VectorXd output(const Eigen::VectorXd& x) const;

private:
  std::variant<LinearModel, NonlinearModel> model_;
};

/// f(x, u; theta) + R w.
Eigen::VectorXd step(const SystemModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& theta, const Eigen::VectorXd& w);

}  // namespace robust_synth::models
