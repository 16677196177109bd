#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace robust_synth::scltl {

/// Largest proposition list for which the alphabet 2^AP is enumerated.
inline constexpr std::size_t kMaxPropositions = 16;

/// A letter of 2^AP: bit i set iff proposition i holds.
struct Letter {
  std::uint32_t bits = 0;

  bool has(std::size_t prop) const { return (bits >> prop) & 1U; }
  Letter with(std::size_t prop) const { return Letter{bits | (std::uint32_t{1} << prop)}; }
  std::size_t index() const { return bits; }

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

inline std::size_t alphabet_size(std::size_t num_props) { return std::size_t{1} << num_props; }

/// "{p1,p2}" style rendering.
std::string to_string(Letter letter, const std::vector<std::string>& ap);

}  // namespace robust_synth::scltl
