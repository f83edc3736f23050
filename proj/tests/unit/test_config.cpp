#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "output.hpp"
#include "run_config.hpp"

using namespace darkspec;
using namespace darkspec::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string validation_field(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<none>";
}

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / (std::string("darkspec_test_") + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, Fig2Example) {
  const RunConfig cfg = parse_config(R"({"scheme": "lambda", "model": "isotropic_edge",
      "g": 1, "delta_g": 0, "grid_min": -6, "grid_max": 6, "grid_n": 4001})");
  EXPECT_EQ(cfg.emitter.scheme, Scheme::LambdaType);
  EXPECT_EQ(cfg.emitter.model.kind(), DomKind::IsotropicEdge);
  EXPECT_EQ(cfg.emitter.gamma, 1.0);
  EXPECT_EQ(cfg.grid.n, 4001);
  EXPECT_EQ(cfg.normalization, Normalization::Raw);
  EXPECT_FALSE(cfg.output.has_value());
}

TEST(Config, RejectsNegativeEpsilon) {
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "smoothed_edge", "g": 1,
      "delta_g": 0, "epsilon": -0.1})"),
            "epsilon");
}

TEST(Config, AcceptsNormalizedInitialState) {
  const RunConfig cfg = parse_config(R"({"scheme": "driven", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "omega": 1, "delta": -1.5, "b2_0": 0.6, "b3_0": 0.8})");
  EXPECT_EQ(cfg.emitter.scheme, Scheme::LaserDriven);
  EXPECT_EQ(cfg.emitter.b2_0, 0.6);
  EXPECT_EQ(cfg.emitter.b3_0, 0.8);
  EXPECT_EQ(validation_field(R"({"scheme": "driven", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "omega": 1, "delta": 0, "b2_0": 0.6, "b3_0": 0.6})"),
            "b2_0");
}

TEST(Config, RejectsUnknownAndInapplicableKeys) {
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "colour": 3})"),
            "colour");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "omega": 1})"),
            "omega");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "epsilon": 0.3})"),
            "epsilon");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "ring", "g": 1, "delta_g": 0})"),
            "model");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": -1,
      "delta_g": 0})"),
            "g");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "grid_n": 1})"),
            "grid_n");
  EXPECT_EQ(validation_field(R"({"scheme": "lambda", "model": "isotropic_edge", "g": 1,
      "delta_g": 0, "normalization": "max"})"),
            "normalization");
}

TEST(Config, MalformedInputIsParseError) {
  EXPECT_THROW(parse_config("{\"scheme\": "), ParseError);
  EXPECT_THROW(parse_config("[1, 2]"), ParseError);
}

TEST(Config, JsonRoundTrip) {
  for (int id = 2; id <= 9; ++id) {
    for (double dg : figure_delta_g_values()) {
      RunConfig cfg = figure_preset(id, dg);
      cfg.normalization = Normalization::PeakUnit;
      cfg.output = "out.csv";
      cfg.oracle.dt = 0.005;
      const std::string once = to_json(cfg).dump();
      const RunConfig back = parse_config(once);
      EXPECT_EQ(to_json(back).dump(), once) << id;
      const FrequencyGrid g{-6.0, 6.0, 401};
      EXPECT_EQ(eval_grid(back.emitter, g).values, eval_grid(cfg.emitter, g).values) << id;
    }
  }
}

TEST(Config, LoadMissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/darkspec.json"), IoError);
}

TEST(Output, CsvFormat) {
  Spectrum s;
  s.grid = {-1.0, 1.0, 3};
  s.values = {0.5, 4.0, 0.1};
  EXPECT_EQ(format_csv(s), "delta_lambda,S\n-1,0.5\n0,4\n1,0.10000000000000001\n");
}

TEST(Output, WriteAtomicReplacesFile) {
  const fs::path dir = scratch_dir("atomic");
  const fs::path file = dir / "a.csv";
  write_atomic(file.string(), "one");
  write_atomic(file.string(), "two");
  EXPECT_EQ(slurp(file), "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(write_atomic((dir / "missing" / "x.csv").string(), "x"), IoError);
  fs::remove_all(dir);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code_for(ParseError("x")), kParse);
  EXPECT_EQ(exit_code_for(ValidationError("f", "x")), kValidation);
  EXPECT_EQ(exit_code_for(PoleAtBandEdge(0.0)), kPole);
  EXPECT_EQ(exit_code_for(NormDrift(1.0)), kOracle);
  EXPECT_EQ(exit_code_for(TruncationWarning(0.5)), kOracle);
  EXPECT_EQ(exit_code_for(IoError("x")), kIo);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kInternal);
}

TEST(Commands, FigurePresetModels) {
  EXPECT_EQ(figure_preset(2, 0.0).emitter.model.kind(), DomKind::IsotropicEdge);
  EXPECT_EQ(figure_preset(7, 0.0).emitter.model.kind(), DomKind::SmoothedEdge);
  EXPECT_EQ(figure_preset(8, 0.0).emitter.scheme, Scheme::LaserDriven);
  EXPECT_THROW(figure_preset(1, 0.0), ValidationError);
  EXPECT_THROW(figure_preset(10, 0.0), ValidationError);
}

TEST(Commands, FigureOutputsAreDeterministic) {
  const fs::path a = scratch_dir("fig_a");
  const fs::path b = scratch_dir("fig_b");
  const Summary ra = cmd_figure(8, a.string());
  cmd_figure(8, b.string());
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
  }
  EXPECT_EQ(files, 7u);
  ASSERT_EQ(ra["curves"].size(), 3u);
  for (const auto& c : ra["curves"]) {
    EXPECT_EQ(c["peaks"], 4);
    EXPECT_EQ(c["zeros"].size(), 3u);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Commands, SpectrumWritesCsv) {
  const fs::path dir = scratch_dir("spectrum");
  RunConfig cfg = figure_preset(4, 1.0);
  cfg.grid = {-6.0, 6.0, 1201};
  const Summary s = cmd_spectrum(cfg, (dir / "s.csv").string());
  EXPECT_EQ(s["peaks"], 3);
  EXPECT_EQ(s["zeros"].size(), 2u);
  const std::string csv = slurp(dir / "s.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1202);
  fs::remove_all(dir);
}
