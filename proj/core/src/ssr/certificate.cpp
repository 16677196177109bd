#include "robust_synth/ssr/certificate.hpp"

#include <algorithm>
#include <numeric>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"
#include "robust_synth/ssr/coupling.hpp"

namespace robust_synth::ssr {

DeltaTable::DeltaTable(std::size_t num_states, std::size_t num_inputs, double fill)
    : num_states_(num_states), num_inputs_(num_inputs), values_(num_states * num_inputs, fill) {}

double DeltaTable::max() const { return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end()); }
double DeltaTable::min() const { return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end()); }
double DeltaTable::mean() const {
  return values_.empty() ? 0.0 : std::accumulate(values_.begin(), values_.end(), 0.0) / double(values_.size());
}

double SsrCertificate::delta_at(std::size_t s, std::size_t u) const {
  if (const auto* t = std::get_if<DeltaTable>(&delta)) return t->at(s, u);
  return std::get<double>(delta);
}

double SsrCertificate::delta_global() const {
  if (const auto* t = std::get_if<DeltaTable>(&delta)) return t->max();
  return std::get<double>(delta);
}

SsrCertificate identity_certificate() {
  SsrCertificate c;
  c.provenance = {"identity"};
  return c;
}

namespace {

double whitened_norm(const models::NonlinearModel& model, double bound) {
  if (bound == 0.0) return 0.0;
  if (const auto dir = model.dynamics().offset_direction()) {
    return bound * (model.noise_factor_inverse() * *dir).norm();
  }
  return bound * models::spectral_norm(model.noise_factor_inverse());
}

}  // namespace

SsrCertificate delta_linear(const models::LinearModel& model, const models::UncertaintyBox& theta_set) {
  if (theta_set.dim() != model.state_dim()) {
    throw InputError("additive uncertainty must have the state dimension");
  }
  double worst = 0.0;
  for (const auto& vertex : theta_set.vertices()) {
    const Eigen::VectorXd offset = model.noise_factor_inverse() * (vertex - model.nominal_theta());
    worst = std::max(worst, 1.0 - coupling_mass(offset));
  }
  SsrCertificate c;
  c.abstract_model = "nominal";
  c.concrete_model = "concrete";
  c.epsilon = 0.0;
  c.delta = std::clamp(worst, 0.0, 1.0);
  c.relation = Relation{RelationKind::Identity, 0.0, "x = x_hat"};
  c.provenance = {"linear additive-offset coupling, vertex supremum over Theta"};
  return c;
}

double delta_nonlinear(const models::NonlinearModel& model, const models::UncertaintyBox& theta_set,
                       const Eigen::VectorXd& x_hat, const Eigen::VectorXd& u_hat) {
  const double d = model.dynamics().disturbance_bound(x_hat, u_hat, model.nominal_theta(), theta_set);
  return std::clamp(1.0 - coupling_mass_from_norm(whitened_norm(model, d)), 0.0, 1.0);
}

SsrCertificate delta_nonlinear_table(const models::NonlinearModel& model, const models::UncertaintyBox& theta_set,
                                     std::span<const Box> cells, std::span<const Eigen::VectorXd> inputs) {
  DeltaTable table(cells.size(), inputs.size());
  parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t u = 0; u < inputs.size(); ++u) {
        const double d = model.dynamics().disturbance_bound(cells[s], inputs[u], model.nominal_theta(), theta_set);
        table.at(s, u) = std::clamp(1.0 - coupling_mass_from_norm(whitened_norm(model, d)), 0.0, 1.0);
      }
    }
  });
  SsrCertificate c;
  c.abstract_model = "nominal";
  c.concrete_model = "concrete";
  c.epsilon = 0.0;
  c.delta = std::move(table);
  c.relation = Relation{RelationKind::Identity, 0.0, "x = x_hat"};
  c.provenance = {"nonlinear parameter-offset coupling, per-cell disturbance bound (" + model.dynamics().name() + ")"};
  return c;
}

namespace {

bool links(const SsrCertificate& lower, const SsrCertificate& upper) {
  return lower.concrete_model.empty() || upper.abstract_model.empty() ||
         lower.concrete_model == upper.abstract_model;
}

Delta add_delta(const Delta& a, const Delta& b) {
  const auto* ta = std::get_if<DeltaTable>(&a);
  const auto* tb = std::get_if<DeltaTable>(&b);
  if (!ta && !tb) return std::clamp(std::get<double>(a) + std::get<double>(b), 0.0, 1.0);
  if (ta && tb && (ta->num_states() != tb->num_states() || ta->num_inputs() != tb->num_inputs())) {
    throw NumericError("cannot compose delta tables with different index sets");
  }
  DeltaTable out = ta ? *ta : *tb;
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    const double lhs = ta ? ta->values()[i] : std::get<double>(a);
    const double rhs = tb ? tb->values()[i] : std::get<double>(b);
    out.values()[i] = std::clamp(lhs + rhs, 0.0, 1.0);
  }
  return out;
}

}  // namespace

SsrCertificate compose_transitive(const SsrCertificate& c1, const SsrCertificate& c2) {
  const SsrCertificate* lower = &c1;
  const SsrCertificate* upper = &c2;
  if (!links(*lower, *upper)) {
    std::swap(lower, upper);
    if (!links(*lower, *upper)) {
      throw NumericError("certificates do not chain: " + c1.abstract_model + "<=" + c1.concrete_model + " and " +
                         c2.abstract_model + "<=" + c2.concrete_model);
    }
  }
  SsrCertificate out;
  out.abstract_model = lower->abstract_model.empty() ? upper->abstract_model : lower->abstract_model;
  out.concrete_model = upper->concrete_model.empty() ? lower->concrete_model : upper->concrete_model;
  out.epsilon = c1.epsilon + c2.epsilon;
  out.delta = add_delta(c1.delta, c2.delta);
  out.valid = c1.valid && c2.valid;
  if (lower->relation.kind == RelationKind::Identity && lower->relation.radius == 0.0) {
    out.relation = upper->relation;
  } else if (upper->relation.kind == RelationKind::Identity && upper->relation.radius == 0.0) {
    out.relation = lower->relation;
  } else {
    out.relation = Relation{RelationKind::Composite, lower->relation.radius + upper->relation.radius,
                            lower->relation.description + " ; " + upper->relation.description};
  }
  out.provenance.push_back("transitive composition");
  for (const auto* parent : {lower, upper}) {
    for (const auto& p : parent->provenance) out.provenance.push_back("  " + p);
  }
  return out;
}

}  // namespace robust_synth::ssr
