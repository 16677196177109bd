#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robust_synth/common/box.hpp"
#include "robust_synth/models/labeling.hpp"
#include "robust_synth/models/system_model.hpp"
#include "robust_synth/models/uncertainty.hpp"

namespace robust_synth::app {

/// One experiment, fully validated: every matrix has consistent dimensions
/// and every proposition has a region.
struct RunConfig {
  std::string name;
  models::SystemModel model;
  models::UncertaintyBox theta_set;
  std::vector<std::string> ap;
  std::string formula;
  models::LabelingMap labels;

  Box grid_bounds;
  std::vector<std::size_t> grid_cells;
  Box input_bounds;
  std::vector<std::size_t> input_samples;

  double tolerance = 1e-6;
  std::size_t max_iterations = 5000;

  std::size_t runs = 1000;
  /// 0 selects 4x the sweep count of the synthesis run.
  std::size_t horizon = 0;
  std::uint64_t seed = 1;
  double confidence = 0.99;
  std::vector<Eigen::VectorXd> initial_states;

  std::filesystem::path output_dir;
};

/// Parses a configuration document. Relative output paths stay relative to
/// the working directory. Throws InputError with line and column for
/// malformed JSON and with the offending key for schema violations.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// "a,b,c" -> vector; throws InputError on junk.
Eigen::VectorXd parse_vector(const std::string& text);

}  // namespace robust_synth::app
