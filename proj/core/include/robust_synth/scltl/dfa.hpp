#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "robust_synth/scltl/formula.hpp"
#include "robust_synth/scltl/letter.hpp"

namespace robust_synth::scltl {

/// Complete deterministic automaton over 2^AP. Locations are dense indices;
/// the transition table is row-major, one row of 2^|AP| targets per location.
class Dfa {
public:
  Dfa() = default;
  Dfa(std::vector<std::string> ap, std::size_t initial, std::vector<bool> accepting,
      std::vector<std::uint32_t> delta);

  const std::vector<std::string>& ap() const { return ap_; }
  std::size_t num_locations() const { return accepting_.size(); }
  std::size_t alphabet_size() const { return scltl::alphabet_size(ap_.size()); }
  std::size_t initial() const { return initial_; }
  bool is_accepting(std::size_t q) const { return accepting_[q]; }
  const std::vector<bool>& accepting() const { return accepting_; }
  const std::vector<std::uint32_t>& delta() const { return delta_; }

  std::size_t next(std::size_t q, Letter a) const { return delta_[q * alphabet_size() + a.index()]; }
  /// Location reached from the initial location after reading `word`.
  std::size_t run(const Word& word) const;
  bool accepts(const Word& word) const { return is_accepting(run(word)); }

  /// True iff the location has a self loop on every letter.
  bool is_absorbing(std::size_t q) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

private:
  std::vector<std::string> ap_;
  std::size_t initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::uint32_t> delta_;
};

struct CompileOptions {
  /// Upper bound on derivative states explored before minimization.
  std::size_t max_states = 1'000'000;
};

/// Builds the minimal DFA accepting exactly the good prefixes of `formula`.
///
/// States are formula derivatives kept as minimal monotone DNFs over the
/// temporal subformulas, so structurally different but equivalent residuals
/// share a state. The reachable derivative automaton is then minimized by
/// Moore partition refinement and renumbered breadth-first from the initial
/// location. Throws NumericError when `max_states` is exceeded.
Dfa compile_to_dfa(const Formula& formula, const std::vector<std::string>& ap, const CompileOptions& options = {});

enum class DfaFormat { Json, Dot };

std::string export_dfa(const Dfa& dfa, DfaFormat format);
/// Inverse of export_dfa(.., DfaFormat::Json). Throws InputError on schema violations.
Dfa import_dfa_json(const std::string& text);

}  // namespace robust_synth::scltl
