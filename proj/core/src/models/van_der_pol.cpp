#include "robust_synth/models/van_der_pol.hpp"

#include <cmath>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/models/interval.hpp"

namespace robust_synth::models {

VanDerPol::VanDerPol(double tau) : tau_(tau) {
  if (!(tau > 0.0)) throw InputError("Van der Pol sampling time must be positive");
}

Eigen::VectorXd VanDerPol::f(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const {
  Eigen::VectorXd next(2);
  next[0] = x[0] + x[1] * tau_;
  next[1] = x[1] + (-x[0] + theta[0] * (1.0 - x[0] * x[0]) * x[1]) * tau_ + u[0];
  return next;
}

double vdp_disturbance_bound(const Eigen::VectorXd& x, const UncertaintyBox& theta_set, double tau, double theta0) {
  return tau * theta_set.max_deviation(0, theta0) * std::abs((1.0 - x[0] * x[0]) * x[1]);
}

double VanDerPol::disturbance_bound(const Eigen::VectorXd& x, const Eigen::VectorXd&, const Eigen::VectorXd& theta0,
                                    const UncertaintyBox& theta_set) const {
  return vdp_disturbance_bound(x, theta_set, tau_, theta0[0]);
}

double VanDerPol::disturbance_bound(const Box& cell, const Eigen::VectorXd&, const Eigen::VectorXd& theta0,
                                    const UncertaintyBox& theta_set) const {
  const Interval x1{cell.lo(0), cell.hi(0)};
  const Interval x2{cell.lo(1), cell.hi(1)};
  const Interval g = (1.0 + (-1.0) * sqr(x1)) * x2;
  return tau_ * theta_set.max_deviation(0, theta0[0]) * g.mag();
}

std::optional<Eigen::VectorXd> VanDerPol::offset_direction() const { return Eigen::Vector2d(0.0, 1.0); }

Eigen::MatrixXd VanDerPol::jacobian_bound(const Box& cell, const Eigen::VectorXd&, const Eigen::VectorXd& theta) const {
  const Interval x1{cell.lo(0), cell.hi(0)};
  const Interval x2{cell.lo(1), cell.hi(1)};
  const double th = theta[0];
  // d f2 / d x1 = tau (-1 - 2 theta x1 x2),  d f2 / d x2 = 1 + tau theta (1 - x1^2)
  const Interval j21 = tau_ * (-1.0 + (-2.0 * th) * (x1 * x2));
  const Interval j22 = 1.0 + (tau_ * th) * (1.0 + (-1.0) * sqr(x1));
  Eigen::MatrixXd M(2, 2);
  M << 1.0, tau_, j21.mag(), j22.mag();
  return M;
}

}  // namespace robust_synth::models
