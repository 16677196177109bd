#include "robust_synth/refinement/rng.hpp"

#include <cmath>
#include <numbers>

namespace robust_synth::refinement {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t step, std::uint64_t slot) const {
  std::uint64_t h = splitmix(seed_);
  h = splitmix(h ^ stream);
  h = splitmix(h ^ step);
  return splitmix(h ^ slot);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t step, std::uint64_t slot) const {
  return (double(bits(stream, step, slot) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t step, std::uint64_t k) const {
  const double u1 = uniform(stream, step, 2 * (k / 2));
  const double u2 = uniform(stream, step, 2 * (k / 2) + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return k % 2 == 0 ? r * std::cos(a) : r * std::sin(a);
}

Eigen::VectorXd CounterRng::normal_vector(std::uint64_t stream, std::uint64_t step, std::size_t dim,
                                          std::uint64_t first) const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) w[static_cast<Eigen::Index>(i)] = normal(stream, step, first + i);
  return w;
}

}  // namespace robust_synth::refinement
