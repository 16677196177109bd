#include "robust_synth/models/linear_model.hpp"

#include <limits>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::models {

double spectral_norm(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(0);
}

LinearModel::LinearModel(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::MatrixXd R,
                         Eigen::VectorXd theta0)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), R_(std::move(R)), theta0_(std::move(theta0)) {
  const auto n = A_.rows();
  if (n == 0 || A_.cols() != n) throw InputError("A must be a non-empty square matrix");
  if (B_.rows() != n) throw InputError("B must have as many rows as A");
  if (C_.cols() != n) throw InputError("C must have as many columns as A has rows");
  if (R_.rows() != n || R_.cols() != n) throw InputError("noise factor R must be n x n");
  if (theta0_.size() == 0) theta0_ = Eigen::VectorXd::Zero(n);
  if (theta0_.size() != n) throw InputError("nominal theta must have the state dimension (additive uncertainty)");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R_);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= std::numeric_limits<double>::epsilon() * s(0) || s(0) == 0.0) {
    throw InputError("noise factor R must be invertible");
  }
  cond_R_ = s(0) / s(n - 1);
  R_inv_ = R_.inverse();
}

}  // namespace robust_synth::models
