#include "robust_synth/models/system_model.hpp"

#include "robust_synth/common/errors.hpp"

namespace robust_synth::models {

std::size_t SystemModel::state_dim() const {
  return std::visit([](const auto& m) { return m.state_dim(); }, model_);
}
std::size_t SystemModel::input_dim() const {
  return std::visit([](const auto& m) { return m.input_dim(); }, model_);
}
std::size_t SystemModel::output_dim() const {
  return std::visit([](const auto& m) { return m.output_dim(); }, model_);
}
const Eigen::MatrixXd& SystemModel::noise_factor() const {
  return std::visit([](const auto& m) -> const Eigen::MatrixXd& { return m.noise_factor(); }, model_);
}
const Eigen::MatrixXd& SystemModel::noise_factor_inverse() const {
  return std::visit([](const auto& m) -> const Eigen::MatrixXd& { return m.noise_factor_inverse(); }, model_);
}
const Eigen::VectorXd& SystemModel::nominal_theta() const {
  return std::visit([](const auto& m) -> const Eigen::VectorXd& { return m.nominal_theta(); }, model_);
}

Eigen::VectorXd SystemModel::mean(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& theta) const {
  return std::visit([&](const auto& m) { return m.mean(x, u, theta); }, model_);
}

Eigen::VectorXd SystemModel::output(const Eigen::VectorXd& x) const {
  return std::visit([&](const auto& m) { return m.output(x); }, model_);
}

Eigen::VectorXd step(const SystemModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& theta, const Eigen::VectorXd& w) {
  if (static_cast<std::size_t>(x.size()) != model.state_dim() ||
      static_cast<std::size_t>(u.size()) != model.input_dim() ||
      static_cast<std::size_t>(w.size()) != model.state_dim()) {
    throw InputError("step: dimension mismatch");
  }
  return model.mean(x, u, theta) + model.noise_factor() * w;
}

}  // namespace robust_synth::models
