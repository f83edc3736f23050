#include "darkspec/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "darkspec/errors.hpp"

namespace darkspec {
namespace {

constexpr cplx kI{0.0, 1.0};

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

// Factor that clears the band-edge divisor, and the value of the edge term
// after multiplication by it.
struct EdgeClearing {
  cplx multiplier{1.0};
  cplx cleared_term{0.0};
};

}  // namespace

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::LambdaType ? "lambda" : "driven";
}

EmitterConfig EmitterConfig::lambda_type(DomModel model, double g, double gamma) {
  EmitterConfig cfg;
  cfg.scheme = Scheme::LambdaType;
  cfg.gamma = gamma;
  cfg.g = CouplingStrength(g);
  cfg.model = model;
  cfg.validate();
  return cfg;
}

EmitterConfig EmitterConfig::laser_driven(DomModel model, double g, double omega, double delta,
                                          double b2_0, double b3_0, double gamma) {
  EmitterConfig cfg;
  cfg.scheme = Scheme::LaserDriven;
  cfg.gamma = gamma;
  cfg.g = CouplingStrength(g);
  cfg.model = model;
  cfg.omega = omega;
  cfg.delta = delta;
  cfg.b2_0 = b2_0;
  cfg.b3_0 = b3_0;
  cfg.validate();
  return cfg;
}

void EmitterConfig::validate(bool allow_closed_system) const {
  require(std::isfinite(gamma), "gamma", "must be finite");
  if (allow_closed_system) {
    require(gamma >= 0.0, "gamma", "must be >= 0");
  } else {
    require(gamma > 0.0, "gamma", "must be > 0");
  }
  if (scheme == Scheme::LambdaType) {
    require(b2_0 == 1.0 && b3_0 == 0.0, "b2_0", "lambda scheme starts in |2>: b2_0 = 1, b3_0 = 0");
    return;
  }
  require(std::isfinite(omega) && omega >= 0.0, "omega", "must be finite and >= 0");
  require(std::isfinite(delta), "delta", "must be finite");
  require(std::isfinite(b2_0), "b2_0", "must be finite");
  require(std::isfinite(b3_0), "b3_0", "must be finite");
  require(std::abs(b2_0 * b2_0 + b3_0 * b3_0 - 1.0) <= 1e-12, "b2_0",
          "initial amplitudes must satisfy b2_0^2 + b3_0^2 = 1");
}

void FrequencyGrid::validate() const {
  require(std::isfinite(min) && std::isfinite(max), "grid", "bounds must be finite");
  require(min < max, "grid_min", "must be < grid_max");
  require(n >= 2, "grid_n", "must be >= 2");
}

double FrequencyGrid::point(int i) const noexcept {
  if (i == n - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::vector<double> FrequencyGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = point(i);
  return out;
}

double Spectrum::peak() const {
  if (values.empty()) return 0.0;
  return *std::max_element(values.begin(), values.end());
}

SpectralFraction lambda_fraction(const EmitterConfig& cfg, double delta_lambda) {
  const DomModel& model = cfg.model;
  const double c = cfg.g.c();
  const cplx r = branch_sqrt(delta_lambda - model.delta_g());
  const cplx base{0.5 * cfg.gamma, -delta_lambda};  // -i delta_lambda + gamma/2

  switch (model.kind()) {
    case DomKind::IsotropicEdge:
      if (c == 0.0) return {1.0, base};
      return {r, base * r + c};
    case DomKind::SmoothedEdge: {
      const cplx q = kI * std::sqrt(model.epsilon()) + r;
      return {q, base * q + c};
    }
    case DomKind::EdgePlusDeltaDefect: {
      const double g1sq = model.g1() * model.g1();
      const cplx m_edge = c > 0.0 ? r : cplx{1.0};
      const cplx m_def = g1sq > 0.0 ? cplx{delta_lambda - model.delta_c()} : cplx{1.0};
      cplx d = base * m_edge * m_def;
      if (c > 0.0) d += c * m_def;
      if (g1sq > 0.0) d += kI * g1sq * m_edge;
      return {m_edge * m_def, d};
    }
    case DomKind::EdgePlusLorentzianDefect: {
      const double g1sq = model.g1() * model.g1();
      const cplx lor = g1sq / cplx{0.5 * model.gamma_c(), model.delta_c() - delta_lambda};
      if (c == 0.0) return {1.0, base + lor};
      return {r, (base + lor) * r + c};
    }
  }
  return {0.0, 1.0};
}

SpectralFraction driven_fraction(const EmitterConfig& cfg, double delta_lambda) {
  if (cfg.omega == 0.0 && delta_lambda == cfg.delta) {
    // Common factor (delta_lambda - delta) cancels algebraically.
    SpectralFraction f = lambda_fraction(cfg, delta_lambda);
    f.numerator *= cfg.b2_0;
    f.denominator *= -kI;
    return f;
  }

  const DomModel& model = cfg.model;
  const double c = cfg.g.c();
  const double u = delta_lambda - cfg.delta;
  const cplx r = branch_sqrt(delta_lambda - model.delta_g());

  const cplx numerator = u * cfg.b2_0 + cfg.omega * cfg.b3_0;
  cplx core = u * cplx{delta_lambda, 0.5 * cfg.gamma} - cfg.omega * cfg.omega;

  // i u c / r = i c (r + (delta_g - delta) / r): the divisor only survives
  // when the laser is detuned from the edge.
  EdgeClearing edge;
  if (c > 0.0) {
    if (model.kind() == DomKind::SmoothedEdge) {
      edge.multiplier = kI * std::sqrt(model.epsilon()) + r;
      edge.cleared_term = kI * c * u;
    } else if (cfg.delta != model.delta_g()) {
      edge.multiplier = r;
      edge.cleared_term = kI * c * u;
    } else {
      edge.cleared_term = kI * c * r;
    }
  }

  // -g1^2 u / (delta_lambda - delta_c) = -g1^2 (1 + (delta_c - delta) / (delta_lambda - delta_c))
  EdgeClearing defect;
  const double g1sq = model.g1() * model.g1();
  if (model.kind() == DomKind::EdgePlusDeltaDefect && g1sq > 0.0) {
    if (cfg.delta != model.delta_c()) {
      defect.multiplier = delta_lambda - model.delta_c();
      defect.cleared_term = -g1sq * u;
    } else {
      defect.cleared_term = -g1sq;
    }
  } else if (model.kind() == DomKind::EdgePlusLorentzianDefect) {
    core += kI * u * g1sq / cplx{0.5 * model.gamma_c(), model.delta_c() - delta_lambda};
  }

  const cplx m = edge.multiplier * defect.multiplier;
  return {numerator * m, core * m + edge.cleared_term * defect.multiplier +
                             defect.cleared_term * edge.multiplier};
}

namespace {

double evaluate(const EmitterConfig& cfg, const SpectralFraction& f, double delta_lambda) {
  const double d2 = std::norm(f.denominator);
  if (d2 == 0.0) throw DegenerateDenominator(delta_lambda);
  return cfg.gamma * std::norm(f.numerator) / d2;
}

}  // namespace

double lambda_spectrum(const EmitterConfig& cfg, double delta_lambda) {
  return evaluate(cfg, lambda_fraction(cfg, delta_lambda), delta_lambda);
}

double driven_spectrum(const EmitterConfig& cfg, double delta_lambda) {
  return evaluate(cfg, driven_fraction(cfg, delta_lambda), delta_lambda);
}

double spectrum_at(const EmitterConfig& cfg, double delta_lambda) {
  return cfg.scheme == Scheme::LambdaType ? lambda_spectrum(cfg, delta_lambda)
                                          : driven_spectrum(cfg, delta_lambda);
}

Spectrum eval_grid(const EmitterConfig& cfg, const FrequencyGrid& grid,
                   Normalization normalization) {
  cfg.validate();
  grid.validate();
  Spectrum s;
  s.grid = grid;
  s.values.resize(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    s.values[static_cast<std::size_t>(i)] = spectrum_at(cfg, grid.point(i));
  }
  s.source = [cfg](double x) { return spectrum_at(cfg, x); };
  return normalized(std::move(s), normalization);
}

Spectrum normalized(Spectrum s, Normalization normalization) {
  if (normalization == s.normalization) return s;
  // Back to raw first.
  if (s.scale != 1.0) {
    for (double& v : s.values) v /= s.scale;
    s.scale = 1.0;
  }
  s.normalization = normalization;
  if (normalization == Normalization::PeakUnit) {
    const double peak = s.peak();
    if (peak > 0.0) {
      s.scale = 1.0 / peak;
      for (double& v : s.values) v /= peak;
    }
  }
  return s;
}

}  // namespace darkspec
