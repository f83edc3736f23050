#include "darkspec/darklines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace darkspec {

std::string_view to_string(DarkLineOrigin origin) {
  switch (origin) {
    case DarkLineOrigin::BandEdge: return "band_edge";
    case DarkLineOrigin::DefectMode: return "defect_mode";
    case DarkLineOrigin::LaserInduced: return "laser_induced";
  }
  return "unknown";
}

namespace {

DarkLine present_at(double position, DarkLineOrigin origin) {
  return {position, origin, true, std::nullopt};
}

DarkLine absent_at(double position, DarkLineOrigin origin, std::string reason) {
  return {position, origin, false, std::move(reason)};
}

std::vector<DarkLine> reservoir_lines(const EmitterConfig& cfg, bool laser_coupled) {
  const DomModel& m = cfg.model;
  std::vector<DarkLine> out;

  if (m.kind() == DomKind::SmoothedEdge) {
    out.push_back(absent_at(m.delta_g(), DarkLineOrigin::BandEdge, "smoothed, ε>0"));
  } else if (cfg.g.g() == 0.0) {
    out.push_back(absent_at(m.delta_g(), DarkLineOrigin::BandEdge, "g = 0"));
  } else if (laser_coupled && cfg.delta == m.delta_g()) {
    out.push_back(absent_at(m.delta_g(), DarkLineOrigin::BandEdge, "δ = δ_g"));
  } else {
    out.push_back(present_at(m.delta_g(), DarkLineOrigin::BandEdge));
  }

  if (m.kind() == DomKind::EdgePlusDeltaDefect) {
    if (m.g1() == 0.0) {
      out.push_back(absent_at(m.delta_c(), DarkLineOrigin::DefectMode, "g₁ = 0"));
    } else if (laser_coupled && cfg.delta == m.delta_c()) {
      out.push_back(absent_at(m.delta_c(), DarkLineOrigin::DefectMode, "δ = δ_c"));
    } else {
      out.push_back(present_at(m.delta_c(), DarkLineOrigin::DefectMode));
    }
  } else if (m.kind() == DomKind::EdgePlusLorentzianDefect) {
    out.push_back(
        absent_at(m.delta_c(), DarkLineOrigin::DefectMode, "Lorentzian defect, γ_c>0"));
  }
  return out;
}

}  // namespace

std::vector<DarkLine> predict_dark_lines(const EmitterConfig& cfg) {
  cfg.validate();
  if (cfg.scheme == Scheme::LambdaType) return reservoir_lines(cfg, false);

  if (cfg.omega == 0.0) {
    // The driven spectrum collapses to b2(0)^2 times the lambda spectrum.
    std::vector<DarkLine> out;
    if (cfg.b2_0 == 0.0) {
      out = reservoir_lines(cfg, false);
      for (DarkLine& d : out) {
        d.present = false;
        d.suppression_reason = "no emission: Ω = 0, b₂(0)=0";
      }
    } else {
      out = reservoir_lines(cfg, false);
    }
    out.push_back(absent_at(cfg.delta, DarkLineOrigin::LaserInduced, "Ω = 0"));
    return out;
  }

  std::vector<DarkLine> out = reservoir_lines(cfg, true);
  if (cfg.b2_0 == 0.0) {
    out.push_back(absent_at(std::numeric_limits<double>::infinity(),
                            DarkLineOrigin::LaserInduced, "b₂(0)=0"));
  } else if (cfg.b3_0 == 0.0) {
    out.push_back(present_at(cfg.delta, DarkLineOrigin::LaserInduced));
  } else {
    out.push_back(present_at(cfg.delta - cfg.omega * cfg.b3_0 / cfg.b2_0,
                             DarkLineOrigin::LaserInduced));
  }
  return out;
}

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double a,
                                            double b, double target, int max_iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (a > b) std::swap(a, b);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenSectionResult best = fc < fd ? GoldenSectionResult{c, fc} : GoldenSectionResult{d, fd};
  for (int it = 0; it < max_iterations && best.value > target; ++it) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

std::vector<double> find_zeros(const Spectrum& spec, double rel_tol) {
  if (spec.values.empty()) throw std::invalid_argument("find_zeros: empty spectrum");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("find_zeros: rel_tol in (0,1)");

  const auto& v = spec.values;
  const int n = static_cast<int>(v.size());
  const double peak = spec.peak();
  if (!(peak > 0.0)) return {};

  std::vector<double> zeros;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || v[i] <= v[i - 1];
    const bool right_ok = i == n - 1 || v[i] <= v[i + 1];
    if (!left_ok || !right_ok) continue;
    // Skip flat runs of equal samples after the first.
    if (i > 0 && v[i] == v[i - 1]) continue;

    const double xi = spec.grid.point(i);
    if (!spec.source) {
      if (v[i] <= rel_tol * peak) zeros.push_back(xi);
      continue;
    }

    const double raw_peak = peak / spec.scale;
    GoldenSectionResult best{xi, v[i] / spec.scale};
    if (best.value > 0.0) {
      // Run to bracket collapse: a quadratic zero can sit well below any
      // value threshold while still being offset in position.
      const double lo = spec.grid.point(std::max(i - 1, 0));
      const double hi = spec.grid.point(std::min(i + 1, n - 1));
      const GoldenSectionResult g = golden_section_minimize(spec.source, lo, hi, 0.0);
      if (g.value < best.value) best = g;
    }
    if (best.value <= rel_tol * raw_peak) zeros.push_back(best.x);
  }

  std::sort(zeros.begin(), zeros.end());
  std::vector<double> merged;
  for (double z : zeros) {
    if (merged.empty() || z - merged.back() > 1e-8) merged.push_back(z);
  }
  return merged;
}

int count_peaks(const Spectrum& spec) {
  const auto& v = spec.values;
  if (v.size() < 100) throw std::invalid_argument("count_peaks: need at least 100 samples");
  const double floor = 1e-3 * spec.peak();
  int peaks = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= floor) ++peaks;
  }
  return peaks;
}

}  // namespace darkspec
