#pragma once

#include <vector>

#include <Eigen/Dense>

#include "robust_synth/abstraction/abstract_mdp.hpp"
#include "robust_synth/abstraction/grid.hpp"
#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/nonlinear_model.hpp"
#include "robust_synth/ssr/certificate.hpp"

namespace robust_synth::abstraction {

struct AbstractionOptions {
  /// Transition probabilities below this are moved to the sink.
  double prune_threshold = 1e-12;
};

struct Abstraction {
  Grid grid;
  std::vector<Eigen::VectorXd> inputs;
  AbstractMdp mdp;
  /// grid <= nominal
  ssr::SsrCertificate certificate;
};

/// Discretization certificate for the linear model without building rows:
/// epsilon = ||C|| beta / (1 - ||A||), delta = 0. Marked invalid (epsilon =
/// inf) when ||A|| >= 1.
ssr::SsrCertificate linear_grid_certificate(const models::LinearModel& model, const Grid& grid);

/// Rows from N(A c + B u + theta0, R R^T) integrated over each cell.
/// Requires a diagonal R R^T.
Abstraction abstract_linear(const models::LinearModel& model, const Grid& grid, std::vector<Eigen::VectorXd> inputs,
                            const AbstractionOptions& options = {});

/// Upper bound on sup_{x in cell(s)} ||f(x,u;theta0) - f(center(s),u;theta0)||
/// from the interval Jacobian bound times beta.
double cell_offset_bound(const models::NonlinearModel& model, const Grid& grid, std::size_t s,
                         const Eigen::VectorXd& u);

/// Rows from N(f(c, u; theta0), R R^T); certificate epsilon = beta * L_h and
/// delta(s,u) = 1 - coupling_mass(||R^-1|| * cell_offset_bound(s,u)).
Abstraction abstract_nonlinear(const models::NonlinearModel& model, const Grid& grid,
                               std::vector<Eigen::VectorXd> inputs, const AbstractionOptions& options = {});

}  // namespace robust_synth::abstraction
