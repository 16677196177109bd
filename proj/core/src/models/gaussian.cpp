#include "robust_synth/models/gaussian.hpp"

#include <cmath>
#include <limits>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::models {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double std_normal_interval(double a, double b) {
  if (b <= a) return 0.0;
  if (a > 0.0) return std_normal_cdf(-a) - std_normal_cdf(-b);
  return std_normal_cdf(b) - std_normal_cdf(a);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("quantile requires p in (0,1)");
  // Bisection to bracket, Newton to polish.
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std_normal_cdf(mid) < p ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    if (pdf <= 0.0) break;
    z -= (std_normal_cdf(z) - p) / pdf;
  }
  return z;
}

std::optional<Eigen::VectorXd> diagonal_std(const Eigen::MatrixXd& factor, double tol) {
  const Eigen::MatrixXd cov = factor * factor.transpose();
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    for (Eigen::Index j = 0; j < cov.cols(); ++j) {
      if (i != j && std::abs(cov(i, j)) > tol * scale) return std::nullopt;
    }
  }
  return cov.diagonal().cwiseSqrt().eval();
}

double rect_probability(const GaussianKernel& kernel, const Box& rect) {
  const auto n = kernel.mean.size();
  if (static_cast<std::size_t>(n) != rect.dim() || kernel.factor.rows() != n || kernel.factor.cols() != n) {
    throw InputError("rect_probability: dimension mismatch");
  }
  const auto sigma = diagonal_std(kernel.factor);
  if (!sigma) throw InputError("rect_probability requires a diagonal covariance");
  double p = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double s = (*sigma)[i];
    if (s <= 0.0) throw InputError("rect_probability: zero variance");
    p *= std_normal_interval((rect.lo(k) - kernel.mean[i]) / s, (rect.hi(k) - kernel.mean[i]) / s);
  }
  return p;
}

}  // namespace robust_synth::models
