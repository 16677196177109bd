#include "robust_synth/models/uncertainty.hpp"

#include <algorithm>
#include <cmath>

namespace robust_synth::models {

UncertaintyBox UncertaintyBox::point(const Eigen::VectorXd& theta) {
  std::vector<double> v(theta.data(), theta.data() + theta.size());
  return UncertaintyBox(Box(v, v));
}

double UncertaintyBox::max_deviation(std::size_t i, double reference) const {
  return std::max(std::abs(reference - box_.lo(i)), std::abs(reference - box_.hi(i)));
}

}  // namespace robust_synth::models
