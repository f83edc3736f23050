#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "darkspec/errors.hpp"

namespace app = darkspec::app;

int main(int argc, char** argv) {
  CLI::App cli{"Emission spectra and dark lines of emitters near a photonic band edge"};
  cli.require_subcommand(1);

  std::string normalize;
  cli.add_option("--normalize", normalize, "Spectrum normalization (overrides the config)")
      ->check(CLI::IsMember({"raw", "peak"}));

  std::string config_path;
  std::string out_path;
  int figure_id = 0;
  std::string outdir;

  CLI::App* spectrum = cli.add_subcommand("spectrum", "Closed-form spectrum to CSV");
  spectrum->add_option("--config", config_path)->required();
  spectrum->add_option("--out", out_path)->required();

  CLI::App* darklines = cli.add_subcommand("darklines", "Predicted and detected dark lines");
  darklines->add_option("--config", config_path)->required();

  CLI::App* oracle = cli.add_subcommand("oracle", "Closed form against both time-domain oracles");
  oracle->add_option("--config", config_path)->required();
  oracle->add_option("--out", out_path)->required();

  CLI::App* figure = cli.add_subcommand("figure", "Figure preset: three delta_g curves");
  figure->add_option("--id", figure_id)->required()->check(CLI::Range(2, 9));
  figure->add_option("--outdir", outdir)->required();

  for (CLI::App* sub : {spectrum, darklines, oracle, figure}) {
    sub->add_option("--normalize", normalize, "Spectrum normalization")
        ->check(CLI::IsMember({"raw", "peak"}));
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kOk : app::kUsage;
  }

  std::optional<darkspec::Normalization> norm;
  if (normalize == "raw") norm = darkspec::Normalization::Raw;
  if (normalize == "peak") norm = darkspec::Normalization::PeakUnit;

  try {
    app::Summary summary;
    if (figure->parsed()) {
      summary = app::cmd_figure(figure_id, outdir, norm);
    } else {
      app::RunConfig cfg = app::load_config(config_path);
      if (norm) cfg.normalization = *norm;
      if (spectrum->parsed()) {
        summary = app::cmd_spectrum(cfg, out_path);
      } else if (darklines->parsed()) {
        summary = app::cmd_darklines(cfg);
      } else {
        summary = app::cmd_oracle(cfg, out_path);
      }
    }
    std::cout << summary.dump(2) << "\n";
    return app::kOk;
  } catch (const darkspec::ValidationError& e) {
    std::fprintf(stderr, "darkspec: invalid config: %s\n", e.what());
    return app::exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "darkspec: %s\n", e.what());
    return app::exit_code_for(e);
  }
}
