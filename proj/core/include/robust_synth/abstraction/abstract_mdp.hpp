#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace robust_synth::abstraction {

/// Finite MDP over grid states 0..N_s-1 plus an absorbing sink at index N_s.
/// Rows are stored compressed, one per (s, u) with row index s * N_u + u;
/// the sink's rows are the self-loop {N_s: 1}.
class AbstractMdp {
public:
  struct Row {
    std::span<const std::uint32_t> cols;
    std::span<const double> probs;
  };

  AbstractMdp() = default;
  /// `offsets` has (N_s + 1) * N_u + 1 entries covering every row including
  /// the sink's. Validates shape, non-negativity and unit row sums (1e-12).
  AbstractMdp(std::size_t num_grid_states, std::size_t num_inputs, std::vector<std::uint64_t> offsets,
              std::vector<std::uint32_t> cols, std::vector<double> probs, std::vector<Eigen::VectorXd> outputs);

  /// Convenience for hand-built MDPs: `rows[s][u]` lists (target, prob) for
  /// grid states only; the sink rows are appended.
  static AbstractMdp from_rows(const std::vector<std::vector<std::vector<std::pair<std::uint32_t, double>>>>& rows,
                               std::vector<Eigen::VectorXd> outputs);

  std::size_t num_grid_states() const { return num_grid_states_; }
  /// Grid states plus the sink.
  std::size_t num_states() const { return num_grid_states_ + 1; }
  std::size_t sink() const { return num_grid_states_; }
  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t nnz() const { return cols_.size(); }

  Row row(std::size_t s, std::size_t u) const;
  /// Representative output y~(s) of grid state s.
  const Eigen::VectorXd& output(std::size_t s) const { return outputs_[s]; }
  const std::vector<Eigen::VectorXd>& outputs() const { return outputs_; }

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<std::uint32_t>& cols() const { return cols_; }
  const std::vector<double>& probs() const { return probs_; }

  /// Little-endian dump: magic "RSMDP001", u64 n_states (incl. sink),
  /// u64 n_inputs, u64 nnz, u64 offsets[n_states*n_inputs+1],
  /// u32 cols[nnz], f64 probs[nnz].
  void write_binary(std::ostream& out) const;
  void write_binary(const std::string& path) const;

private:
  std::size_t num_grid_states_ = 0;
  std::size_t num_inputs_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> probs_;
  std::vector<Eigen::VectorXd> outputs_;
};

}  // namespace robust_synth::abstraction
