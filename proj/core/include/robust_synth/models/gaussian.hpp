#pragma once

#include <optional>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"

namespace robust_synth::models {

/// Standard normal CDF, via erfc so both tails keep full relative accuracy.
double std_normal_cdf(double z);

/// P(a <= Z <= b) for Z ~ N(0,1), evaluated on the tail that avoids cancellation.
double std_normal_interval(double a, double b);

/// Inverse of std_normal_cdf on (0,1).
double std_normal_quantile(double p);

/// N(mean, factor * factor^T).
struct GaussianKernel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd factor;
};

/// Per-axis standard deviations when factor * factor^T is diagonal.
std::optional<Eigen::VectorXd> diagonal_std(const Eigen::MatrixXd& factor, double tol = 1e-12);

/// Probability mass of a Gaussian with diagonal covariance on a closed box.
/// Throws InputError for non-diagonal covariance or mismatched dimensions.
double rect_probability(const GaussianKernel& kernel, const Box& rect);

}  // namespace robust_synth::models
