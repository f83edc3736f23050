// Both time-domain oracles on every figure configuration.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "darkspec/darklines.hpp"
#include "darkspec/oracle.hpp"

using namespace darkspec;

namespace {

const FrequencyGrid kGrid{-6.0, 6.0, 4001};

struct OracleRun {
  Spectrum closed;
  Spectrum volterra;
  Spectrum comb;
};

OracleRun run(int id) {
  const EmitterConfig cfg = app::figure_preset(id, 0.0).emitter;
  return {eval_grid(cfg, kGrid),
          spectrum_from_trajectory(solve_volterra_adaptive(cfg, 0.01), kGrid),
          discretized_mode_evolve_adaptive(cfg, build_mode_comb(cfg), kGrid, 0.01).spectrum};
}

// Lowest sample within +-window of x: its position and its value over the peak.
std::pair<double, double> dip_near(const Spectrum& s, double x, double window) {
  double pos = x;
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.grid.n; ++i) {
    const double p = s.grid.point(i);
    if (std::abs(p - x) <= window && s.values[static_cast<std::size_t>(i)] < lo) {
      lo = s.values[static_cast<std::size_t>(i)];
      pos = p;
    }
  }
  return {pos, lo / s.peak()};
}

class OracleFigures : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(OracleFigures, AgreeWithClosedFormAndEachOther) {
  const OracleRun r = run(GetParam());
  EXPECT_LE(compare_spectra(r.closed, r.volterra, 0.1), 0.05);
  EXPECT_LE(compare_spectra(r.closed, r.comb, 0.1), 0.05);
  EXPECT_LE(compare_spectra(r.volterra, r.comb, 0.1), 0.05);

  const double spacing = (kGrid.max - kGrid.min) / (kGrid.n - 1);
  const EmitterConfig cfg = app::figure_preset(GetParam(), 0.0).emitter;
  for (const DarkLine& d : predict_dark_lines(cfg)) {
    if (!d.present) continue;
    for (const Spectrum* s : {&r.volterra, &r.comb}) {
      const auto [pos, depth] = dip_near(*s, d.position, 0.1);
      EXPECT_LE(std::abs(pos - d.position), spacing) << to_string(d.origin);
      EXPECT_LT(depth, 1e-3) << to_string(d.origin);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Figures, OracleFigures, ::testing::Range(2, 10));
