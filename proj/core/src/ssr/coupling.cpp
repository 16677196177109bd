#include "robust_synth/ssr/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "robust_synth/models/gaussian.hpp"

namespace robust_synth::ssr {

double coupling_mass_from_norm(double offset_norm) {
  return 2.0 * models::std_normal_cdf(-0.5 * std::abs(offset_norm));
}

double coupling_mass(const Eigen::VectorXd& offset) { return coupling_mass_from_norm(offset.norm()); }

double coupling_acceptance(const Eigen::VectorXd& w, const Eigen::VectorXd& offset) {
  // log N(w;-m,I) - log N(w;0,I) = -0.5 ||w+m||^2 + 0.5 ||w||^2
  const double log_ratio = -0.5 * (w + offset).squaredNorm() + 0.5 * w.squaredNorm();
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

CouplingSpec CouplingSpec::from_offset(Eigen::VectorXd whitened_offset) {
  CouplingSpec spec;
  spec.mass = coupling_mass(whitened_offset);
  spec.offset = std::move(whitened_offset);
  return spec;
}

}  // namespace robust_synth::ssr
