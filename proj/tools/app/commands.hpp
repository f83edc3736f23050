#pragma once

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace darkspec::app {

using Summary = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kPole = 4,
  kOracle = 5,
  kIo = 6,
  kInternal = 7,
};

// Maps an exception to the exit code of its error class.
int exit_code_for(const std::exception& e);

// Closed-form spectrum to `out_path` (CSV); returns the summary record.
Summary cmd_spectrum(const RunConfig& cfg, const std::string& out_path);

// Predicted catalogue next to the zeros and peaks found on the grid.
Summary cmd_darklines(const RunConfig& cfg);

// Closed form to `out_path`, the Volterra and comb spectra next to it
// (<stem>.volterra.csv, <stem>.comb.csv), and their compare_spectra metrics.
Summary cmd_oracle(const RunConfig& cfg, const std::string& out_path);

// Figure presets: ids 2..9, curves delta_g in {0, 1, -1}.
std::vector<double> figure_delta_g_values();
RunConfig figure_preset(int id, double delta_g);

// Writes fig<id>_delta_g_<v>.csv and .json per curve plus summary.json to
// `outdir`. Every file is a pure function of the inputs; the returned record
// adds runtime_ms.
Summary cmd_figure(int id, const std::string& outdir,
                   std::optional<Normalization> normalization = std::nullopt);

}  // namespace darkspec::app
