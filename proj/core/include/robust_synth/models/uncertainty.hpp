#pragma once

#include <vector>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"

namespace robust_synth::models {

/// Bounded parameter set Theta, an axis-aligned box.
class UncertaintyBox {
public:
  UncertaintyBox() = default;
  explicit UncertaintyBox(Box box) : box_(std::move(box)) {}
  /// The degenerate box {theta}.
  static UncertaintyBox point(const Eigen::VectorXd& theta);

  const Box& box() const { return box_; }
  std::size_t dim() const { return box_.dim(); }
  bool contains(const Eigen::VectorXd& theta) const { return box_.contains(theta); }
  std::vector<Eigen::VectorXd> vertices() const { return box_.vertices(); }
  /// max_{theta in Theta} |theta_i - reference_i|
  double max_deviation(std::size_t i, double reference) const;

private:
  Box box_;
};

}  // namespace robust_synth::models
