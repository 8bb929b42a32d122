#pragma once

#include <string>
#include <vector>

#include "faasbench/config.hpp"

namespace faasbench {

struct CalibrationResult {
  // key = value lines loadable as a config file
  std::string config_text;
  // one human-readable line per fitted point: target vs fitted
  std::vector<std::string> residual_lines;
};

// Fits the per-function service constants from a reference medians file.
// The zero-WAN column is the anchor: service cost = measured median minus
// the modeled network floor. Missing zero-WAN entries for a function that
// is otherwise present are an error listing the absent keys.
CalibrationResult calibrate_from_reference(const std::string& reference_json_path,
                                           const ModelConfig& model);

}  // namespace faasbench
