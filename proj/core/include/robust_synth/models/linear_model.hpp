#pragma once

#include <Eigen/Dense>

namespace robust_synth::models {

/// x+ = A x + B u + theta + R w,  y = C x,  w ~ N(0, I).
class LinearModel {
public:
  LinearModel(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd R,
              Eigen::VectorXd theta0 = {});

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& B() const { return B_; }
  const Eigen::MatrixXd& C() const { return C_; }
  const Eigen::MatrixXd& noise_factor() const { return R_; }
  const Eigen::MatrixXd& noise_factor_inverse() const { return R_inv_; }
  const Eigen::VectorXd& nominal_theta() const { return theta0_; }
  double noise_condition_number() const { return cond_R_; }

  std::size_t state_dim() const { return static_cast<std::size_t>(A_.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(B_.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(C_.rows()); }

  Eigen::VectorXd mean(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& theta) const {
    return A_ * x + B_ * u + theta;
  }
  Eigen::VectorXd output(const Eigen::VectorXd& x) const { return C_ * x; }

private:
  Eigen::MatrixXd A_, B_, C_, R_, R_inv_;
  Eigen::VectorXd theta0_;
  double cond_R_ = 1.0;
};

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& M);

}  // namespace robust_synth::models
