#pragma once

#include <vector>

#include <Eigen/Dense>

#include "robust_synth/abstraction/grid.hpp"
#include "robust_synth/models/labeling.hpp"
#include "robust_synth/models/system_model.hpp"
#include "robust_synth/scltl/dfa.hpp"
#include "robust_synth/synthesis/value_iteration.hpp"

namespace robust_synth::refinement {

enum class GridMapping {
  /// s+ = cell(x_hat+ - A (x_hat - center(s))): the shared-noise coupling of
  /// the linear grid certificate.
  Coupled,
  /// s+ = cell(x_hat+): the nearest center, used with the cell relation.
  NearestCenter,
};

/// Closed-loop memory: the observed concrete state, the nominal tracker
/// x_hat, the grid state and the automaton location.
struct ControllerState {
  Eigen::VectorXd x;
  Eigen::VectorXd x_hat;
  std::size_t s = 0;
  std::size_t q = 0;
  bool excursion = false;
};

/// Abstract policy refined to the concrete plant with u = u_hat. The state
/// mapping only reads the nominal parameter, never the true theta:
///   linear     x_hat+ = x+ - A (x - x_hat)
///   nonlinear  x_hat+ = x+ - f(x, u; theta0) + f(x_hat, u; theta0)
/// The automaton advances on the exact letter of the concrete output.
class RefinedController {
public:
  RefinedController(synthesis::Policy policy, scltl::Dfa dfa, models::LabelingMap labels, models::SystemModel model,
                    abstraction::Grid grid, std::vector<Eigen::VectorXd> inputs, GridMapping mapping);

  ControllerState start(const Eigen::VectorXd& x0) const;
  /// Input index for the current memory; 0 once accepting or after an excursion.
  std::size_t input_index(const ControllerState& state) const;
  const Eigen::VectorXd& input(const ControllerState& state) const { return inputs_[input_index(state)]; }
  /// Observes the successor x+ after applying input(state).
  void advance(ControllerState& state, const Eigen::VectorXd& x_next) const;

  bool accepted(const ControllerState& state) const { return dfa_.is_accepting(state.q); }
  /// True when the location can no longer reach acceptance.
  bool rejected(const ControllerState& state) const { return dead_[state.q]; }

  const scltl::Dfa& dfa() const { return dfa_; }
  const models::SystemModel& model() const { return model_; }
  const abstraction::Grid& grid() const { return grid_; }
  const std::vector<Eigen::VectorXd>& inputs() const { return inputs_; }
  GridMapping mapping() const { return mapping_; }

private:
  synthesis::Policy policy_;
  scltl::Dfa dfa_;
  models::LabelingMap labels_;
  models::SystemModel model_;
  abstraction::Grid grid_;
  std::vector<Eigen::VectorXd> inputs_;
  GridMapping mapping_;
  std::vector<bool> dead_;
};

/// Default mapping: Coupled for linear models, NearestCenter otherwise.
RefinedController refine(synthesis::Policy policy, scltl::Dfa dfa, models::LabelingMap labels,
                         models::SystemModel model, abstraction::Grid grid, std::vector<Eigen::VectorXd> inputs);

}  // namespace robust_synth::refinement
