#include "robust_synth/models/nonlinear_model.hpp"

#include <algorithm>
#include <limits>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/van_der_pol.hpp"

namespace robust_synth::models {

NonlinearModel::NonlinearModel(std::shared_ptr<const NonlinearDynamics> dynamics, Eigen::MatrixXd R,
                               Eigen::VectorXd theta0)
    : dynamics_(std::move(dynamics)), R_(std::move(R)), theta0_(std::move(theta0)) {
  if (!dynamics_) throw InputError("nonlinear model needs a dynamics evaluator");
  const auto n = static_cast<Eigen::Index>(dynamics_->state_dim());
  if (R_.rows() != n || R_.cols() != n) throw InputError("noise factor R must be n x n");
  if (theta0_.size() != static_cast<Eigen::Index>(dynamics_->param_dim())) {
    throw InputError("nominal theta has the wrong dimension for " + dynamics_->name());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R_);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(n - 1) <= std::numeric_limits<double>::epsilon() * s(0)) {
    throw InputError("noise factor R must be invertible");
  }
  R_inv_ = R_.inverse();
}

AffineDynamics::AffineDynamics(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), c_norm_(spectral_norm(C_)) {
  if (A_.rows() != A_.cols() || B_.rows() != A_.rows() || C_.cols() != A_.rows()) {
    throw InputError("affine dynamics: inconsistent matrix dimensions");
  }
}

double AffineDynamics::disturbance_bound(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                         const Eigen::VectorXd& theta0, const UncertaintyBox& theta_set) const {
  double worst = 0.0;
  for (const auto& v : theta_set.vertices()) worst = std::max(worst, (v - theta0).norm());
  return worst;
}

double AffineDynamics::disturbance_bound(const Box&, const Eigen::VectorXd& u, const Eigen::VectorXd& theta0,
                                         const UncertaintyBox& theta_set) const {
  return disturbance_bound(Eigen::VectorXd(), u, theta0, theta_set);
}

std::shared_ptr<const NonlinearDynamics> make_dynamics(const std::string& name,
                                                       const std::map<std::string, double>& params) {
  if (name == "vanderpol") {
    const auto it = params.find("tau");
    return std::make_shared<VanDerPol>(it == params.end() ? 0.1 : it->second);
  }
  throw InputError("unknown nonlinear model '" + name + "'");
}

}  // namespace robust_synth::models
