#include "robust_synth/abstraction/abstract_mdp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::abstraction {

AbstractMdp::AbstractMdp(std::size_t num_grid_states, std::size_t num_inputs, std::vector<std::uint64_t> offsets,
                         std::vector<std::uint32_t> cols, std::vector<double> probs,
                         std::vector<Eigen::VectorXd> outputs)
    : num_grid_states_(num_grid_states),
      num_inputs_(num_inputs),
      offsets_(std::move(offsets)),
      cols_(std::move(cols)),
      probs_(std::move(probs)),
      outputs_(std::move(outputs)) {
  if (num_inputs_ == 0) throw InputError("abstract MDP needs at least one input");
  const std::size_t rows = num_states() * num_inputs_;
  if (offsets_.size() != rows + 1 || offsets_.front() != 0 || offsets_.back() != cols_.size() ||
      cols_.size() != probs_.size()) {
    throw InputError("malformed compressed transition rows");
  }
  if (outputs_.size() != num_grid_states_) throw InputError("one output per grid state required");
  for (std::size_t r = 0; r < rows; ++r) {
    if (offsets_[r] > offsets_[r + 1]) throw InputError("row offsets must be nondecreasing");
    double sum = 0.0;
    for (auto k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      if (cols_[k] >= num_states()) throw InputError("transition target out of range");
      if (!(probs_[k] >= 0.0)) throw NumericError("negative transition probability");
      sum += probs_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw NumericError("transition row " + std::to_string(r) + " sums to " + std::to_string(sum));
    }
  }
}

AbstractMdp AbstractMdp::from_rows(
    const std::vector<std::vector<std::vector<std::pair<std::uint32_t, double>>>>& rows,
    std::vector<Eigen::VectorXd> outputs) {
  const std::size_t ns = rows.size();
  const std::size_t nu = ns == 0 ? 1 : rows.front().size();
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> probs;
  for (const auto& per_state : rows) {
    if (per_state.size() != nu) throw InputError("every state needs the same number of inputs");
    for (const auto& row : per_state) {
      for (const auto& [t, p] : row) {
        cols.push_back(t);
        probs.push_back(p);
      }
      offsets.push_back(cols.size());
    }
  }
  for (std::size_t u = 0; u < nu; ++u) {
    cols.push_back(static_cast<std::uint32_t>(ns));
    probs.push_back(1.0);
    offsets.push_back(cols.size());
  }
  return AbstractMdp(ns, nu, std::move(offsets), std::move(cols), std::move(probs), std::move(outputs));
}

AbstractMdp::Row AbstractMdp::row(std::size_t s, std::size_t u) const {
  const std::size_t r = s * num_inputs_ + u;
  const auto b = offsets_[r];
  const auto e = offsets_[r + 1];
  return Row{std::span<const std::uint32_t>(cols_.data() + b, e - b), std::span<const double>(probs_.data() + b, e - b)};
}

namespace {

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

void AbstractMdp::write_binary(std::ostream& out) const {
  out.write("RSMDP001", 8);
  put<std::uint64_t>(out, num_states());
  put<std::uint64_t>(out, num_inputs_);
  put<std::uint64_t>(out, nnz());
  for (auto o : offsets_) put<std::uint64_t>(out, o);
  for (auto c : cols_) put<std::uint32_t>(out, c);
  for (auto p : probs_) put<double>(out, p);
  if (!out) throw NumericError("failed writing abstraction dump");
}

void AbstractMdp::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_binary(out);
}

}  // namespace robust_synth::abstraction
