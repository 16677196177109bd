#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace robust_synth::refinement {

/// Stateless counter-based generator: every draw is a hash of
/// (seed, stream, step, slot), so any sample can be regenerated in isolation
/// and results never depend on evaluation order.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t step, std::uint64_t slot) const;
  /// Uniform on (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t step, std::uint64_t slot) const;
  /// Standard normal via Box-Muller on slots (2k, 2k+1).
  double normal(std::uint64_t stream, std::uint64_t step, std::uint64_t k) const;
  Eigen::VectorXd normal_vector(std::uint64_t stream, std::uint64_t step, std::size_t dim,
                                std::uint64_t first = 0) const;

private:
  std::uint64_t seed_;
};

}  // namespace robust_synth::refinement
