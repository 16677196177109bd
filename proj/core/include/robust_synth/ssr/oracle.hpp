#pragma once

#include <Eigen/Dense>

namespace robust_synth::ssr {

/// Integral of min(N(t;0,1), N(t;||m||,1)) dt by adaptive Simpson quadrature.
/// By rotation this equals the mass of min{N(0,I), N(m,I)} in any dimension.
/// Requires ||m|| <= 8. Independent of the closed form in coupling_mass.
double numeric_coupling_oracle(const Eigen::VectorXd& offset, double tol = 1e-12);

}  // namespace robust_synth::ssr
