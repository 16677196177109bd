#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "run_config.hpp"

namespace robust_synth::app {

/// Writes dfa.json and dfa.dot to `out`.
void cmd_compile_spec(const std::string& formula, const std::vector<std::string>& ap,
                      const std::filesystem::path& out, std::ostream& log);

/// Writes certificate.json and delta_map.csv.
void cmd_certify(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// Writes abstraction.json and, when `dump` is set, the binary row dump.
void cmd_abstract(const RunConfig& cfg, const std::filesystem::path& out,
                  const std::optional<std::filesystem::path>& dump, std::ostream& log);

/// Writes valuemap.csv, policy.json and synthesis.log. Reuses
/// certificate.json from `out` when present, otherwise certifies first.
void cmd_synthesize(const RunConfig& cfg, const std::filesystem::path& out, bool force, std::ostream& log);

struct SimulationOverrides {
  std::optional<Eigen::VectorXd> theta;
  std::optional<Eigen::VectorXd> x0;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> seed;
};

/// Closed loop at one theta (default theta0); writes simulation.csv.
void cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, const SimulationOverrides& overrides,
                  std::ostream& log);

/// Bound validation over Theta's vertices, theta0 and interior samples;
/// writes validation.csv.
void cmd_validate(const RunConfig& cfg, const std::filesystem::path& out, const SimulationOverrides& overrides,
                  std::ostream& log);

}  // namespace robust_synth::app
