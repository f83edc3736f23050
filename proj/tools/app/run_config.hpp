#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "darkspec/oracle.hpp"
#include "darkspec/spectra.hpp"

namespace darkspec::app {

struct OracleSettings {
  double t_max = 50.0;    // first horizon; doubled while the remainder is not a clean tail
  double t_limit = 400.0;
  double dt = 0.01;
  double comb_spacing = 0.02;
  bool trapping = false;
};

// Flat configuration for one run. Keys mirror the member names.
struct RunConfig {
  EmitterConfig emitter;
  FrequencyGrid grid;
  Normalization normalization = Normalization::Raw;
  std::optional<std::string> output;
  OracleSettings oracle;
};

// Throws ParseError for malformed text and ValidationError(field) for
// unknown, inapplicable, missing or out-of-range keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Inverse of parse_config: only keys that apply to the model are emitted.
nlohmann::ordered_json to_json(const RunConfig& cfg);

std::string_view to_string(Normalization normalization);

}  // namespace darkspec::app
