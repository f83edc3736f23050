#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "darkspec/spectra.hpp"

namespace darkspec {

enum class DarkLineOrigin { BandEdge, DefectMode, LaserInduced };

std::string_view to_string(DarkLineOrigin origin);

struct DarkLine {
  double position = 0.0;
  DarkLineOrigin origin = DarkLineOrigin::BandEdge;
  bool present = true;
  std::optional<std::string> suppression_reason;  // set iff !present
};

// Analytic catalogue of spectral zeros for the configuration.
std::vector<DarkLine> predict_dark_lines(const EmitterConfig& cfg);

// Grid minima refined by golden-section search on the spectrum's source.
// A refined minimum counts as a zero when it is <= rel_tol * peak. Without a
// source the grid minima below rel_tol * peak are returned unrefined.
std::vector<double> find_zeros(const Spectrum& spec, double rel_tol = 1e-6);

// Strict interior local maxima at least 1e-3 of the global peak.
int count_peaks(const Spectrum& spec);

struct GoldenSectionResult {
  double x;
  double value;
};

// Minimizes f on [a, b]; stops when the bracket collapses to floating-point
// resolution or f drops to `target`.
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double a,
                                            double b, double target = 0.0,
                                            int max_iterations = 200);

}  // namespace darkspec
