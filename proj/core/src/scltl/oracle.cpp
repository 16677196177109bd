#include "robust_synth/scltl/oracle.hpp"

#include <algorithm>

namespace robust_synth::scltl {
namespace {

// Positions >= word.size() all denote the same void letter.
bool holds(const Formula& f, const Word& w, std::size_t i) {
  const std::size_t n = w.size();
  i = std::min(i, n);
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return i < n && w[i].has(f.prop());
    case Op::NotAtom: return i < n && !w[i].has(f.prop());
    case Op::And:
      return std::all_of(f.operands().begin(), f.operands().end(), [&](const Formula& g) { return holds(g, w, i); });
    case Op::Or:
      return std::any_of(f.operands().begin(), f.operands().end(), [&](const Formula& g) { return holds(g, w, i); });
    case Op::Next: return holds(f.lhs(), w, i + 1);
    case Op::Until:
      for (std::size_t j = i; j <= n; ++j) {
        if (holds(f.rhs(), w, j)) return true;
        if (!holds(f.lhs(), w, j)) return false;
      }
      return false;
  }
  return false;
}

}  // namespace

bool good_prefix_oracle(const Formula& formula, const Word& word) { return holds(formula, word, 0); }

}  // namespace robust_synth::scltl
