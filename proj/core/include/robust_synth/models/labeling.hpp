#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"
#include "robust_synth/scltl/letter.hpp"

namespace robust_synth::models {

/// Output labeling: proposition i holds at y iff y lies in the closed box
/// attached to ap[i].
class LabelingMap {
public:
  LabelingMap() = default;
  /// Every name in `ap` must have exactly one region; extra regions are rejected.
  LabelingMap(std::vector<std::string> ap, const std::vector<std::pair<std::string, Box>>& regions);

  const std::vector<std::string>& ap() const { return ap_; }
  const Box& region(std::size_t prop) const { return regions_[prop]; }

  scltl::Letter label(const Eigen::VectorXd& y) const;

  /// Letters of all outputs within Euclidean distance eps of y, possibly
  /// over-approximated. Each proposition is classified as certainly in
  /// (depth >= eps), certainly out (distance > eps) or ambiguous; ambiguous
  /// bits are expanded, dropping combinations whose required regions have no
  /// common point in the ball. Sorted by letter bits, never empty.
  std::vector<scltl::Letter> ball_letters(const Eigen::VectorXd& y, double eps) const;

private:
  std::vector<std::string> ap_;
  std::vector<Box> regions_;
};

}  // namespace robust_synth::models
