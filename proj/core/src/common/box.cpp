#include "robust_synth/common/box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "robust_synth/common/errors.hpp"

namespace robust_synth {

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) {
    throw InputError("box bounds have different dimensions");
  }
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] <= hi_[i])) {
      throw InputError("box coordinate " + std::to_string(i) + " has lo > hi");
    }
  }
}

Box Box::from_intervals(std::span<const std::pair<double, double>> intervals) {
  std::vector<double> lo, hi;
  for (const auto& [a, b] : intervals) {
    lo.push_back(a);
    hi.push_back(b);
  }
  return Box(std::move(lo), std::move(hi));
}

bool Box::contains(const Eigen::VectorXd& p) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[static_cast<Eigen::Index>(i)] < lo_[i] || p[static_cast<Eigen::Index>(i)] > hi_[i]) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd Box::center() const {
  Eigen::VectorXd c(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) c[static_cast<Eigen::Index>(i)] = 0.5 * (lo_[i] + hi_[i]);
  return c;
}

double Box::distance(const Eigen::VectorXd& p) const {
  double sq = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double v = p[static_cast<Eigen::Index>(i)];
    const double d = v < lo_[i] ? lo_[i] - v : (v > hi_[i] ? v - hi_[i] : 0.0);
    sq += d * d;
  }
  return std::sqrt(sq);
}

double Box::depth(const Eigen::VectorXd& p) const {
  if (!contains(p)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) {
    const double v = p[static_cast<Eigen::Index>(i)];
    d = std::min({d, v - lo_[i], hi_[i] - v});
  }
  return d;
}

Box Box::intersect(const Box& other, bool& empty) const {
  std::vector<double> lo(dim()), hi(dim());
  empty = false;
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::max(lo_[i], other.lo_[i]);
    hi[i] = std::min(hi_[i], other.hi_[i]);
    if (lo[i] > hi[i]) {
      empty = true;
      hi[i] = lo[i];
    }
  }
  return Box(std::move(lo), std::move(hi));
}

bool Box::is_superset_of(const Box& other) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
  }
  return true;
}

std::vector<Eigen::VectorXd> Box::vertices() const {
  if (dim() > 16) throw InputError("vertex enumeration limited to 16 dimensions");
  const std::size_t count = std::size_t{1} << dim();
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
      v[static_cast<Eigen::Index>(i)] = (mask >> i) & 1U ? hi_[i] : lo_[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace robust_synth
