#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace robust_synth {

/// Closed axis-aligned box [lo_1,hi_1] x ... x [lo_n,hi_n].
class Box {
public:
  Box() = default;
  Box(std::vector<double> lo, std::vector<double> hi);

  /// Builds a box from [[lo,hi],...] pairs.
  static Box from_intervals(std::span<const std::pair<double, double>> intervals);

  std::size_t dim() const { return lo_.size(); }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }
  double width(std::size_t i) const { return hi_[i] - lo_[i]; }

  bool contains(const Eigen::VectorXd& p) const;
  Eigen::VectorXd center() const;
  /// Euclidean distance from p to the box (0 inside).
  double distance(const Eigen::VectorXd& p) const;
  /// Distance from p to the nearest face when p is inside, 0 otherwise.
  double depth(const Eigen::VectorXd& p) const;
  /// Intersection; `empty` is set when the boxes do not meet.
  Box intersect(const Box& other, bool& empty) const;
  bool is_superset_of(const Box& other) const;

  /// All 2^n corners, dimension 0 varying fastest.
  std::vector<Eigen::VectorXd> vertices() const;

private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

}  // namespace robust_synth
