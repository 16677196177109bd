#include "robust_synth/models/labeling.hpp"

#include <algorithm>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::models {

using scltl::Letter;

LabelingMap::LabelingMap(std::vector<std::string> ap, const std::vector<std::pair<std::string, Box>>& regions)
    : ap_(std::move(ap)) {
  if (ap_.size() > scltl::kMaxPropositions) throw InputError("too many atomic propositions");
  regions_.resize(ap_.size());
  std::vector<int> seen(ap_.size(), 0);
  std::size_t dim = 0;
  for (const auto& [name, box] : regions) {
    const auto it = std::find(ap_.begin(), ap_.end(), name);
    if (it == ap_.end()) throw InputError("region '" + name + "' does not name a proposition");
    const auto i = static_cast<std::size_t>(it - ap_.begin());
    if (seen[i]++) throw InputError("proposition '" + name + "' has more than one region");
    if (dim != 0 && box.dim() != dim) throw InputError("regions have different dimensions");
    dim = box.dim();
    regions_[i] = box;
  }
  for (std::size_t i = 0; i < ap_.size(); ++i) {
    if (!seen[i]) throw InputError("proposition '" + ap_[i] + "' has no region");
  }
}

Letter LabelingMap::label(const Eigen::VectorXd& y) const {
  Letter l;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (regions_[i].contains(y)) l = l.with(i);
  }
  return l;
}

std::vector<Letter> LabelingMap::ball_letters(const Eigen::VectorXd& y, double eps) const {
  if (eps < 0.0) throw InputError("ball radius must be non-negative");
  Letter fixed;
  std::vector<std::size_t> ambiguous;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Box& r = regions_[i];
    if (r.distance(y) > eps) continue;
    if (r.contains(y) && r.depth(y) >= eps) {
      fixed = fixed.with(i);
    } else {
      ambiguous.push_back(i);
    }
  }
  std::vector<Letter> out;
  const std::size_t combos = std::size_t{1} << ambiguous.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    Letter l = fixed;
    for (std::size_t k = 0; k < ambiguous.size(); ++k) {
      if ((mask >> k) & 1U) l = l.with(ambiguous[k]);
    }
    // All regions required by l must share a point within the ball.
    bool feasible = true;
    if (mask != 0) {
      bool empty = false;
      Box common;
      bool first = true;
      for (std::size_t i = 0; i < regions_.size() && !empty; ++i) {
        if (!l.has(i)) continue;
        common = first ? regions_[i] : common.intersect(regions_[i], empty);
        first = false;
      }
      feasible = !empty && common.distance(y) <= eps;
    }
    if (feasible) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace robust_synth::models
