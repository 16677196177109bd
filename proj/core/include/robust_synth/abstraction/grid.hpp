#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"

namespace robust_synth::abstraction {

/// Uniform tiling of a bounded box. Cells are indexed with dimension 0
/// varying fastest; representative points are cell centers.
class Grid {
public:
  Grid() = default;
  Grid(Box bounds, std::vector<std::size_t> cells_per_dim);

  const Box& bounds() const { return bounds_; }
  std::size_t dim() const { return bounds_.dim(); }
  std::size_t num_cells() const { return num_cells_; }
  const std::vector<std::size_t>& cells_per_dim() const { return cells_; }
  double width(std::size_t i) const { return widths_[i]; }
  /// Half of the cell diagonal: the largest distance from a cell point to its center.
  double beta() const { return beta_; }

  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::vector<std::size_t>& multi) const;
  Eigen::VectorXd center(std::size_t flat) const;
  Box cell(std::size_t flat) const;
  std::vector<Box> cells() const;

  /// Cell containing x (cells are half-open except at the upper boundary),
  /// nullopt outside the bounds.
  std::optional<std::size_t> locate(const Eigen::VectorXd& x) const;

private:
  Box bounds_;
  std::vector<std::size_t> cells_;
  std::vector<double> widths_;
  std::size_t num_cells_ = 0;
  double beta_ = 0.0;
};

Grid build_grid(const Box& bounds, const std::vector<std::size_t>& cells_per_dim);

/// Uniform samples per dimension including both endpoints; a single sample
/// sits at the midpoint. Dimension 0 varies fastest.
std::vector<Eigen::VectorXd> input_sampling(const Box& bounds, const std::vector<std::size_t>& count_per_dim);

}  // namespace robust_synth::abstraction
