#include "robust_synth/abstraction/grid.hpp"

#include <cmath>
#include <string>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::abstraction {

Grid::Grid(Box bounds, std::vector<std::size_t> cells_per_dim)
    : bounds_(std::move(bounds)), cells_(std::move(cells_per_dim)) {
  if (cells_.size() != bounds_.dim() || cells_.empty()) {
    throw InputError("grid needs one cell count per dimension");
  }
  num_cells_ = 1;
  double diag_sq = 0.0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == 0) throw InputError("grid cell count must be positive in dimension " + std::to_string(i));
    if (!(bounds_.width(i) > 0.0)) throw InputError("grid bounds must have positive width");
    widths_.push_back(bounds_.width(i) / double(cells_[i]));
    diag_sq += widths_.back() * widths_.back();
    num_cells_ *= cells_[i];
  }
  beta_ = 0.5 * std::sqrt(diag_sq);
}

Grid build_grid(const Box& bounds, const std::vector<std::size_t>& cells_per_dim) {
  return Grid(bounds, cells_per_dim);
}

std::vector<std::size_t> Grid::multi_index(std::size_t flat) const {
  std::vector<std::size_t> m(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    m[i] = flat % cells_[i];
    flat /= cells_[i];
  }
  return m;
}

std::size_t Grid::flat_index(const std::vector<std::size_t>& multi) const {
  std::size_t flat = 0;
  for (std::size_t i = dim(); i-- > 0;) flat = flat * cells_[i] + multi[i];
  return flat;
}

Eigen::VectorXd Grid::center(std::size_t flat) const {
  Eigen::VectorXd c(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::size_t k = flat % cells_[i];
    flat /= cells_[i];
    c[static_cast<Eigen::Index>(i)] = bounds_.lo(i) + (double(k) + 0.5) * widths_[i];
  }
  return c;
}

Box Grid::cell(std::size_t flat) const {
  std::vector<double> lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::size_t k = flat % cells_[i];
    flat /= cells_[i];
    lo[i] = bounds_.lo(i) + double(k) * widths_[i];
    hi[i] = k + 1 == cells_[i] ? bounds_.hi(i) : bounds_.lo(i) + double(k + 1) * widths_[i];
  }
  return Box(std::move(lo), std::move(hi));
}

std::vector<Box> Grid::cells() const {
  std::vector<Box> out;
  out.reserve(num_cells_);
  for (std::size_t s = 0; s < num_cells_; ++s) out.push_back(cell(s));
  return out;
}

std::optional<std::size_t> Grid::locate(const Eigen::VectorXd& x) const {
  std::size_t flat = 0;
  for (std::size_t i = dim(); i-- > 0;) {
    const double v = x[static_cast<Eigen::Index>(i)];
    if (!(v >= bounds_.lo(i) && v <= bounds_.hi(i))) return std::nullopt;
    auto k = static_cast<std::size_t>(std::floor((v - bounds_.lo(i)) / widths_[i]));
    if (k >= cells_[i]) k = cells_[i] - 1;
    flat = flat * cells_[i] + k;
  }
  return flat;
}

std::vector<Eigen::VectorXd> input_sampling(const Box& bounds, const std::vector<std::size_t>& count_per_dim) {
  if (count_per_dim.size() != bounds.dim()) throw InputError("input sampling needs one count per input dimension");
  std::size_t total = 1;
  for (auto c : count_per_dim) {
    if (c == 0) throw InputError("input sample count must be at least 1");
    total *= c;
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Eigen::VectorXd u(static_cast<Eigen::Index>(bounds.dim()));
    std::size_t rest = flat;
    for (std::size_t i = 0; i < bounds.dim(); ++i) {
      const std::size_t c = count_per_dim[i];
      const std::size_t k = rest % c;
      rest /= c;
      u[static_cast<Eigen::Index>(i)] =
          c == 1 ? 0.5 * (bounds.lo(i) + bounds.hi(i))
                 : bounds.lo(i) + bounds.width(i) * double(k) / double(c - 1);
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace robust_synth::abstraction
