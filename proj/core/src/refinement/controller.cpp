#include "robust_synth/refinement/controller.hpp"

#include "robust_synth/common/errors.hpp"

namespace robust_synth::refinement {

RefinedController::RefinedController(synthesis::Policy policy, scltl::Dfa dfa, models::LabelingMap labels,
                                     models::SystemModel model, abstraction::Grid grid,
                                     std::vector<Eigen::VectorXd> inputs, GridMapping mapping)
    : policy_(std::move(policy)),
      dfa_(std::move(dfa)),
      labels_(std::move(labels)),
      model_(std::move(model)),
      grid_(std::move(grid)),
      inputs_(std::move(inputs)),
      mapping_(mapping) {
  if (policy_.num_locations != dfa_.num_locations() || policy_.mu.size() != grid_.num_cells() * dfa_.num_locations()) {
    throw InputError("policy does not cover every (grid state, location) pair");
  }
  if (inputs_.empty()) throw InputError("controller needs at least one input");
  for (auto u : policy_.mu) {
    if (u >= inputs_.size()) throw InputError("policy refers to an unknown input");
  }
  if (labels_.ap() != dfa_.ap()) throw InputError("labeling and automaton use different proposition lists");
  if (grid_.dim() != model_.state_dim()) throw InputError("grid dimension differs from the state dimension");
  if (mapping_ == GridMapping::Coupled && !model_.is_linear()) {
    throw InputError("coupled grid mapping needs a linear model");
  }
  // Locations from which no accepting location is reachable.
  const std::size_t nq = dfa_.num_locations();
  std::vector<bool> live(nq, false);
  for (std::size_t q = 0; q < nq; ++q) live[q] = dfa_.is_accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < nq; ++q) {
      if (live[q]) continue;
      for (std::size_t a = 0; a < dfa_.alphabet_size(); ++a) {
        if (live[dfa_.delta()[q * dfa_.alphabet_size() + a]]) {
          live[q] = changed = true;
          break;
        }
      }
    }
  }
  dead_.resize(nq);
  for (std::size_t q = 0; q < nq; ++q) dead_[q] = !live[q];
}

ControllerState RefinedController::start(const Eigen::VectorXd& x0) const {
  ControllerState st;
  st.x = x0;
  st.x_hat = x0;
  st.q = dfa_.next(dfa_.initial(), labels_.label(model_.output(x0)));
  if (const auto s = grid_.locate(x0)) {
    st.s = *s;
  } else {
    st.excursion = true;
  }
  return st;
}

std::size_t RefinedController::input_index(const ControllerState& state) const {
  if (state.excursion || dfa_.is_accepting(state.q)) return 0;
  return policy_.at(state.s, state.q);
}

void RefinedController::advance(ControllerState& state, const Eigen::VectorXd& x_next) const {
  const Eigen::VectorXd& u = input(state);
  Eigen::VectorXd x_hat_next;
  if (model_.is_linear()) {
    x_hat_next = x_next - model_.linear().A() * (state.x - state.x_hat);
  } else {
    const auto& theta0 = model_.nominal_theta();
    x_hat_next = x_next - model_.mean(state.x, u, theta0) + model_.mean(state.x_hat, u, theta0);
  }
  if (!state.excursion) {
    Eigen::VectorXd probe = x_hat_next;
    if (mapping_ == GridMapping::Coupled) probe -= model_.linear().A() * (state.x_hat - grid_.center(state.s));
    const auto s = grid_.locate(probe);
    if (s && grid_.bounds().contains(x_next)) {
      state.s = *s;
    } else {
      state.excursion = true;
    }
  }
  state.x = x_next;
  state.x_hat = std::move(x_hat_next);
  state.q = dfa_.next(state.q, labels_.label(model_.output(state.x)));
}

RefinedController refine(synthesis::Policy policy, scltl::Dfa dfa, models::LabelingMap labels,
                         models::SystemModel model, abstraction::Grid grid, std::vector<Eigen::VectorXd> inputs) {
  const auto mapping = model.is_linear() ? GridMapping::Coupled : GridMapping::NearestCenter;
  return RefinedController(std::move(policy), std::move(dfa), std::move(labels), std::move(model), std::move(grid),
                           std::move(inputs), mapping);
}

}  // namespace robust_synth::refinement
