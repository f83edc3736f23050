#pragma once

#include <functional>
#include <vector>

#include "darkspec/reservoir.hpp"

namespace darkspec {

enum class Scheme { LambdaType, LaserDriven };

std::string_view to_string(Scheme scheme);

struct EmitterConfig {
  Scheme scheme = Scheme::LambdaType;
  double gamma = 1.0;
  CouplingStrength g{1.0};
  DomModel model = DomModel::isotropic_edge(0.0);
  double omega = 0.0;  // Rabi frequency, driven scheme only
  double delta = 0.0;  // laser detuning, driven scheme only
  double b2_0 = 1.0;
  double b3_0 = 0.0;

  static EmitterConfig lambda_type(DomModel model, double g, double gamma = 1.0);
  static EmitterConfig laser_driven(DomModel model, double g, double omega, double delta,
                                    double b2_0, double b3_0, double gamma = 1.0);

  // Throws ValidationError naming the field. With allow_closed_system the
  // Markovian rate may be zero (time-domain checks of the bare reservoir).
  void validate(bool allow_closed_system = false) const;
};

struct FrequencyGrid {
  double min = -6.0;
  double max = 6.0;
  int n = 4001;

  void validate() const;
  double spacing() const noexcept { return (max - min) / (n - 1); }
  double point(int i) const noexcept;
  std::vector<double> points() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

enum class Normalization { Raw, PeakUnit };

struct Spectrum {
  FrequencyGrid grid;
  std::vector<double> values;
  Normalization normalization = Normalization::Raw;
  // values[i] == scale * raw(grid.point(i)).
  double scale = 1.0;
  // Raw closed-form evaluator the samples came from; empty for oracle spectra.
  std::function<double(double)> source;

  double peak() const;
};

// Pole-safe numerator and denominator; S = gamma |N|^2 / |D|^2.
struct SpectralFraction {
  cplx numerator;
  cplx denominator;
};

SpectralFraction lambda_fraction(const EmitterConfig& cfg, double delta_lambda);
SpectralFraction driven_fraction(const EmitterConfig& cfg, double delta_lambda);

// Long-time emission spectrum into the Markovian channel. Throws
// DegenerateDenominator when the pole-safe denominator is exactly zero.
double lambda_spectrum(const EmitterConfig& cfg, double delta_lambda);
double driven_spectrum(const EmitterConfig& cfg, double delta_lambda);
double spectrum_at(const EmitterConfig& cfg, double delta_lambda);

Spectrum eval_grid(const EmitterConfig& cfg, const FrequencyGrid& grid,
                   Normalization normalization = Normalization::Raw);

// Rescales to the requested normalization. Identically zero spectra stay zero.
Spectrum normalized(Spectrum s, Normalization normalization);

}  // namespace darkspec
