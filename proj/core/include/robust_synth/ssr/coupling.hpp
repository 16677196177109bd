#pragma once

#include <Eigen/Dense>

namespace robust_synth::ssr {

/// Mass of min{N(0,I), N(m,I)}: 2 * Phi(-||m|| / 2).
double coupling_mass(const Eigen::VectorXd& offset);
double coupling_mass_from_norm(double offset_norm);

/// Probability with which a sample w ~ N(0,I) is kept by the rejection step
/// realizing min{N(dw|0,I), N(dw|-m,I)}: min(1, N(w;-m,I) / N(w;0,I)).
double coupling_acceptance(const Eigen::VectorXd& w, const Eigen::VectorXd& offset);

/// Whitened mean shift between two unit-covariance kernels and the mass
/// their min-coupling keeps.
struct CouplingSpec {
  Eigen::VectorXd offset;
  double mass = 1.0;

  static CouplingSpec from_offset(Eigen::VectorXd whitened_offset);
  double delta() const { return 1.0 - mass; }
};

}  // namespace robust_synth::ssr
