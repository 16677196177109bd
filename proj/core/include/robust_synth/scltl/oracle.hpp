#pragma once

#include "robust_synth/scltl/formula.hpp"
#include "robust_synth/scltl/letter.hpp"

namespace robust_synth::scltl {

/// Direct recursive evaluation of the bounded co-safe semantics: the word is
/// read as if followed by void letters in which no literal (p or !p) holds,
/// so an Until must find its witness inside the word. Exponential in the
/// worst case; intended as a reference for compile_to_dfa.
bool good_prefix_oracle(const Formula& formula, const Word& word);

}  // namespace robust_synth::scltl
