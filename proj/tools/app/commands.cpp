#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "darkspec/darklines.hpp"
#include "darkspec/errors.hpp"
#include "darkspec/oracle.hpp"
#include "output.hpp"

namespace darkspec::app {
namespace {

namespace fs = std::filesystem;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Summary grid_json(const FrequencyGrid& grid) {
  Summary j;
  j["min"] = grid.min;
  j["max"] = grid.max;
  j["n"] = grid.n;
  return j;
}

Summary dark_lines_json(const std::vector<DarkLine>& lines) {
  Summary arr = Summary::array();
  for (const DarkLine& d : lines) {
    Summary j;
    if (std::isfinite(d.position)) {
      j["position"] = d.position;
    } else {
      j["position"] = nullptr;
    }
    j["origin"] = std::string(to_string(d.origin));
    j["present"] = d.present;
    if (d.suppression_reason) j["reason"] = *d.suppression_reason;
    arr.push_back(std::move(j));
  }
  return arr;
}

// Peaks and zeros of a sampled spectrum.
void describe(Summary& j, const Spectrum& s) {
  if (s.grid.n >= 100) {
    j["peaks"] = count_peaks(s);
  } else {
    j["peaks"] = nullptr;
  }
  j["zeros"] = find_zeros(s);
}

std::string sibling(const std::string& path, const char* suffix) {
  fs::path p(path);
  const fs::path stem = p.stem();
  return (p.parent_path() / (stem.string() + suffix)).string();
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kParse;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const InvalidModel*>(&e))
    return kValidation;
  if (dynamic_cast<const PoleAtBandEdge*>(&e) || dynamic_cast<const PoleAtDefect*>(&e) ||
      dynamic_cast<const DegenerateDenominator*>(&e) || dynamic_cast<const NonPositiveTau*>(&e))
    return kPole;
  if (dynamic_cast<const StepTooLarge*>(&e) || dynamic_cast<const TruncationWarning*>(&e) ||
      dynamic_cast<const NormDrift*>(&e) || dynamic_cast<const GridMismatch*>(&e))
    return kOracle;
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const fs::filesystem_error*>(&e))
    return kIo;
  return kInternal;
}

Summary cmd_spectrum(const RunConfig& cfg, const std::string& out_path) {
  const Stopwatch clock;
  const Spectrum s = eval_grid(cfg.emitter, cfg.grid, cfg.normalization);
  write_atomic(out_path, format_csv(s));

  Summary j;
  j["command"] = "spectrum";
  j["csv"] = out_path;
  j["grid"] = grid_json(cfg.grid);
  j["normalization"] = std::string(to_string(cfg.normalization));
  describe(j, s);
  j["runtime_ms"] = clock.ms();
  return j;
}

Summary cmd_darklines(const RunConfig& cfg) {
  const Stopwatch clock;
  const Spectrum s = eval_grid(cfg.emitter, cfg.grid, cfg.normalization);
  Summary j;
  j["command"] = "darklines";
  j["grid"] = grid_json(cfg.grid);
  j["predicted"] = dark_lines_json(predict_dark_lines(cfg.emitter));
  describe(j, s);
  j["runtime_ms"] = clock.ms();
  return j;
}

Summary cmd_oracle(const RunConfig& cfg, const std::string& out_path) {
  const Stopwatch clock;
  const OracleSettings& o = cfg.oracle;
  const Spectrum closed = eval_grid(cfg.emitter, cfg.grid);

  HorizonPolicy policy;
  policy.t_start = o.t_max;
  policy.t_limit = o.t_limit;

  Trajectory traj = solve_volterra_adaptive(cfg.emitter, o.dt, policy);
  traj.trapping = o.trapping;
  const Spectrum volterra = spectrum_from_trajectory(traj, cfg.grid);

  CombOptions comb_options;
  comb_options.spacing = o.comb_spacing;
  EvolveOptions evolve;
  evolve.trapping = o.trapping;
  const CombResult comb = discretized_mode_evolve_adaptive(
      cfg.emitter, build_mode_comb(cfg.emitter, comb_options), cfg.grid, o.dt, policy, evolve);

  const double err_volterra = compare_spectra(closed, volterra, 0.1);
  const double err_comb = compare_spectra(closed, comb.spectrum, 0.1);

  const std::string volterra_path = sibling(out_path, ".volterra.csv");
  const std::string comb_path = sibling(out_path, ".comb.csv");
  const Spectrum shown = normalized(closed, cfg.normalization);
  write_atomic(out_path, format_csv(shown));
  write_atomic(volterra_path, format_csv(normalized(volterra, cfg.normalization)));
  write_atomic(comb_path, format_csv(normalized(comb.spectrum, cfg.normalization)));

  auto oracle_json = [](const std::string& csv, double err, const Trajectory& t) {
    Summary j;
    j["csv"] = csv;
    j["rel_err"] = err;
    j["t_max"] = t.t_max;
    j["residual_population"] = t.residual_population();
    return j;
  };

  Summary j;
  j["command"] = "oracle";
  j["csv"] = out_path;
  j["grid"] = grid_json(cfg.grid);
  j["normalization"] = std::string(to_string(cfg.normalization));
  describe(j, shown);
  j["max_rel_err"] = std::max(err_volterra, err_comb);
  j["volterra"] = oracle_json(volterra_path, err_volterra, traj);
  j["comb"] = oracle_json(comb_path, err_comb, comb.trajectory);
  j["runtime_ms"] = clock.ms();
  return j;
}

std::vector<double> figure_delta_g_values() { return {0.0, 1.0, -1.0}; }

RunConfig figure_preset(int id, double delta_g) {
  if (id < 2 || id > 9) throw ValidationError("id", "figure id must be in 2..9");
  const double g = 1.0;
  const double eps = 0.3;
  const double g1 = 1.0;
  const double gamma_c = 1.0;
  const bool driven = id >= 6;
  const double delta_c = driven ? -2.5 : -2.0;

  DomModel model = DomModel::isotropic_edge(delta_g);
  switch ((id - 2) % 4) {
    case 0: model = DomModel::isotropic_edge(delta_g); break;
    case 1: model = DomModel::smoothed_edge(delta_g, eps); break;
    case 2: model = DomModel::edge_plus_delta_defect(delta_g, g1, delta_c); break;
    case 3: model = DomModel::edge_plus_lorentzian_defect(delta_g, g1, delta_c, gamma_c); break;
  }

  RunConfig cfg;
  cfg.emitter = driven ? EmitterConfig::laser_driven(model, g, 1.0, -1.5, 1.0, 0.0)
                       : EmitterConfig::lambda_type(model, g);
  return cfg;
}

Summary cmd_figure(int id, const std::string& outdir, std::optional<Normalization> normalization) {
  const Stopwatch clock;
  if (id < 2 || id > 9) throw ValidationError("id", "figure id must be in 2..9");
  ensure_directory(outdir);

  Summary summary;
  summary["figure"] = id;
  Summary curves = Summary::array();
  for (double dg : figure_delta_g_values()) {
    RunConfig cfg = figure_preset(id, dg);
    if (normalization) cfg.normalization = *normalization;
    if (summary.find("grid") == summary.end()) {
      summary["grid"] = grid_json(cfg.grid);
      summary["normalization"] = std::string(to_string(cfg.normalization));
    }

    char stem[64];
    std::snprintf(stem, sizeof stem, "fig%d_delta_g_%g", id, dg);
    const std::string csv_name = std::string(stem) + ".csv";
    const std::string cfg_name = std::string(stem) + ".json";

    const Spectrum s = eval_grid(cfg.emitter, cfg.grid, cfg.normalization);
    write_atomic((fs::path(outdir) / csv_name).string(), format_csv(s));
    write_atomic((fs::path(outdir) / cfg_name).string(), to_json(cfg).dump(2) + "\n");

    Summary c;
    c["delta_g"] = dg;
    c["csv"] = csv_name;
    c["config"] = cfg_name;
    describe(c, s);
    c["predicted"] = dark_lines_json(predict_dark_lines(cfg.emitter));
    curves.push_back(std::move(c));
  }
  summary["curves"] = std::move(curves);
  write_atomic((fs::path(outdir) / "summary.json").string(), summary.dump(2) + "\n");

  Summary record = summary;
  record["command"] = "figure";
  record["runtime_ms"] = clock.ms();
  return record;
}

}  // namespace darkspec::app
