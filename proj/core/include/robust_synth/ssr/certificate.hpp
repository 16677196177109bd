#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"
#include "robust_synth/models/linear_model.hpp"
#include "robust_synth/models/nonlinear_model.hpp"
#include "robust_synth/models/uncertainty.hpp"

namespace robust_synth::ssr {

/// delta(s, u) per abstract state and input.
class DeltaTable {
public:
  DeltaTable() = default;
  DeltaTable(std::size_t num_states, std::size_t num_inputs, double fill = 0.0);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_inputs() const { return num_inputs_; }
  double at(std::size_t s, std::size_t u) const { return values_[s * num_inputs_ + u]; }
  double& at(std::size_t s, std::size_t u) { return values_[s * num_inputs_ + u]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double max() const;
  double min() const;
  double mean() const;

private:
  std::size_t num_states_ = 0;
  std::size_t num_inputs_ = 0;
  std::vector<double> values_;
};

using Delta = std::variant<double, DeltaTable>;

enum class RelationKind {
  Identity,   // x = x_hat
  GridCell,   // ||x_hat - center(x_tilde)|| <= radius
  Composite,
};

struct Relation {
  RelationKind kind = RelationKind::Identity;
  double radius = 0.0;
  std::string description = "x = x_hat";
};

/// (epsilon, delta) sub-simulation certificate `abstract_model` <= `concrete_model`.
struct SsrCertificate {
  std::string abstract_model;
  std::string concrete_model;
  double epsilon = 0.0;
  Delta delta = 0.0;
  Relation relation;
  std::vector<std::string> provenance;
  /// False when the construction's preconditions failed (e.g. non-contractive A).
  bool valid = true;

  bool has_table() const { return std::holds_alternative<DeltaTable>(delta); }
  double delta_at(std::size_t s, std::size_t u) const;
  /// Supremum over the table; the scalar itself otherwise.
  double delta_global() const;
};

/// Certificate with epsilon = delta = 0 that composes as a neutral element.
SsrCertificate identity_certificate();

/// Additive-offset coupling for the linear model with identity relation:
/// epsilon = 0, delta = max over the vertices of Theta of
/// 1 - coupling_mass(R^-1 (theta - theta0)). The whitened norm is convex in
/// theta, so the vertex maximum is the box supremum.
SsrCertificate delta_linear(const models::LinearModel& model, const models::UncertaintyBox& theta_set);

/// State/input dependent delta for the nominal-vs-parametric coupling of a
/// nonlinear model, 1 - 2 Phi(-d~/2) with d~ the R^-1 whitened disturbance
/// bound. Whitening is exact along a known offset direction and uses
/// ||R^-1|| otherwise.
double delta_nonlinear(const models::NonlinearModel& model, const models::UncertaintyBox& theta_set,
                       const Eigen::VectorXd& x_hat, const Eigen::VectorXd& u_hat);

/// Tabulates delta_nonlinear as a supremum over each cell. Row s uses cells[s].
SsrCertificate delta_nonlinear_table(const models::NonlinearModel& model, const models::UncertaintyBox& theta_set,
                                     std::span<const Box> cells, std::span<const Eigen::VectorXd> inputs);

/// Chains two certificates: epsilon adds exactly, delta adds pointwise and is
/// clipped to [0,1]. The model names must link up (either order); empty
/// names match anything. Throws NumericError for mismatched tables or chains.
SsrCertificate compose_transitive(const SsrCertificate& c1, const SsrCertificate& c2);

}  // namespace robust_synth::ssr
