#include "darkspec/reservoir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "darkspec/errors.hpp"

namespace darkspec {
namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidModel(std::string(name) + " must be finite");
}

void validate(const DomModel::Variant& v) {
  std::visit(overloaded{
                 [](const IsotropicEdge& m) { require_finite(m.delta_g, "delta_g"); },
                 [](const SmoothedEdge& m) {
                   require_finite(m.delta_g, "delta_g");
                   require_finite(m.epsilon, "epsilon");
                   if (m.epsilon < 0.0) throw InvalidModel("epsilon must be >= 0");
                   if (m.epsilon == 0.0)
                     throw InvalidModel("smoothed edge needs epsilon > 0; use the isotropic edge");
                 },
                 [](const EdgePlusDeltaDefect& m) {
                   require_finite(m.delta_g, "delta_g");
                   require_finite(m.g1, "g1");
                   require_finite(m.delta_c, "delta_c");
                   if (m.g1 < 0.0) throw InvalidModel("g1 must be >= 0");
                 },
                 [](const EdgePlusLorentzianDefect& m) {
                   require_finite(m.delta_g, "delta_g");
                   require_finite(m.g1, "g1");
                   require_finite(m.delta_c, "delta_c");
                   require_finite(m.gamma_c, "gamma_c");
                   if (m.g1 < 0.0) throw InvalidModel("g1 must be >= 0");
                   if (!(m.gamma_c > 0.0)) throw InvalidModel("gamma_c must be > 0");
                 },
             },
             v);
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGlNodes{0.1834346424956498, 0.5255324099163290,
                                         0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights{0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

// Moments int_{-1}^{1} t^k e^{-i theta t} dt for k = 0, 1, 2.
struct FilonMoments {
  cplx m0, m1, m2;
};

FilonMoments filon_moments(double theta) {
  if (std::abs(theta) < 0.1) {
    const double t2 = theta * theta;
    const double m0 = 2.0 * (1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0)));
    const double s1 = 2.0 * theta * (1.0 / 3.0 - t2 / 30.0 * (1.0 - t2 / 28.0 * (1.0 - t2 / 54.0)));
    const double m2 = 2.0 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0 - t2 * t2 * t2 / 6480.0);
    return {m0, cplx{0.0, -s1}, m2};
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double t2 = theta * theta;
  return {2.0 * s / theta, cplx{0.0, -2.0 * (s - theta * c) / t2},
          2.0 * ((t2 - 2.0) * s + 2.0 * theta * c) / (t2 * theta)};
}

}  // namespace

std::string_view to_string(DomKind kind) {
  switch (kind) {
    case DomKind::IsotropicEdge: return "isotropic_edge";
    case DomKind::SmoothedEdge: return "smoothed_edge";
    case DomKind::EdgePlusDeltaDefect: return "delta_defect";
    case DomKind::EdgePlusLorentzianDefect: return "lorentzian_defect";
  }
  return "unknown";
}

DomModel::DomModel(Variant v) : v_(v) { validate(v_); }

DomModel DomModel::isotropic_edge(double delta_g) { return DomModel(IsotropicEdge{delta_g}); }

DomModel DomModel::smoothed_edge(double delta_g, double epsilon) {
  return DomModel(SmoothedEdge{delta_g, epsilon});
}

DomModel DomModel::edge_plus_delta_defect(double delta_g, double g1, double delta_c) {
  return DomModel(EdgePlusDeltaDefect{delta_g, g1, delta_c});
}

DomModel DomModel::edge_plus_lorentzian_defect(double delta_g, double g1, double delta_c,
                                               double gamma_c) {
  return DomModel(EdgePlusLorentzianDefect{delta_g, g1, delta_c, gamma_c});
}

DomKind DomModel::kind() const noexcept { return static_cast<DomKind>(v_.index()); }

double DomModel::delta_g() const noexcept {
  return std::visit([](const auto& m) { return m.delta_g; }, v_);
}

double DomModel::epsilon() const noexcept {
  if (const auto* m = std::get_if<SmoothedEdge>(&v_)) return m->epsilon;
  return 0.0;
}

double DomModel::g1() const noexcept {
  if (const auto* m = std::get_if<EdgePlusDeltaDefect>(&v_)) return m->g1;
  if (const auto* m = std::get_if<EdgePlusLorentzianDefect>(&v_)) return m->g1;
  return 0.0;
}

double DomModel::delta_c() const noexcept {
  if (const auto* m = std::get_if<EdgePlusDeltaDefect>(&v_)) return m->delta_c;
  if (const auto* m = std::get_if<EdgePlusLorentzianDefect>(&v_)) return m->delta_c;
  return 0.0;
}

double DomModel::gamma_c() const noexcept {
  if (const auto* m = std::get_if<EdgePlusLorentzianDefect>(&v_)) return m->gamma_c;
  return 0.0;
}

bool DomModel::has_defect() const noexcept {
  return kind() == DomKind::EdgePlusDeltaDefect || kind() == DomKind::EdgePlusLorentzianDefect;
}

DomModel DomModel::with_delta_g(double delta_g) const {
  Variant v = v_;
  std::visit([delta_g](auto& m) { m.delta_g = delta_g; }, v);
  return DomModel(v);
}

bool operator==(const DomModel& a, const DomModel& b) {
  return a.kind() == b.kind() && a.delta_g() == b.delta_g() && a.epsilon() == b.epsilon() &&
         a.g1() == b.g1() && a.delta_c() == b.delta_c() && a.gamma_c() == b.gamma_c();
}

CouplingStrength::CouplingStrength(double g) : g_(g) {
  if (!std::isfinite(g) || g < 0.0) throw InvalidModel("coupling g must be finite and >= 0");
}

double CouplingStrength::c() const noexcept { return g_ * std::sqrt(g_); }

cplx branch_sqrt(double x) noexcept {
  if (x >= 0.0) return {std::sqrt(x), 0.0};
  return {0.0, std::sqrt(-x)};
}

cplx kernel_laplace(const DomModel& model, CouplingStrength g, double delta_lambda) {
  const double c = g.c();
  const double x = delta_lambda - model.delta_g();

  auto bare_edge = [&]() -> cplx {
    if (c == 0.0) return 0.0;
    if (x == 0.0) throw PoleAtBandEdge(delta_lambda);
    return c / branch_sqrt(x);
  };

  return std::visit(
      overloaded{
          [&](const IsotropicEdge&) { return bare_edge(); },
          [&](const SmoothedEdge& m) {
            return c / (kI * std::sqrt(m.epsilon) + branch_sqrt(x));
          },
          [&](const EdgePlusDeltaDefect& m) {
            cplx k = bare_edge();
            if (m.g1 != 0.0) {
              if (delta_lambda == m.delta_c) throw PoleAtDefect(delta_lambda);
              k += kI * m.g1 * m.g1 / (delta_lambda - m.delta_c);
            }
            return k;
          },
          [&](const EdgePlusLorentzianDefect& m) {
            return bare_edge() +
                   m.g1 * m.g1 / cplx{0.5 * m.gamma_c, m.delta_c - delta_lambda};
          },
      },
      model.variant());
}

KernelSplit kernel_singular_part(const DomModel& model, CouplingStrength g) {
  // int_0^inf x^{-1/2} e^{-i x tau} dx = sqrt(pi / tau) e^{-i pi/4}
  const cplx amp = g.c() * std::polar(1.0 / std::sqrt(pi), -pi / 4.0);
  return {amp, model.delta_g()};
}

cplx smoothed_edge_correction(double epsilon, double tau, const KernelQuadrature& quad) {
  if (!(epsilon > 0.0)) throw InvalidModel("epsilon must be > 0");
  if (tau == 0.0) return std::sqrt(epsilon);
  if (tau < 0.0) return std::conj(smoothed_edge_correction(epsilon, -tau, quad));

  auto amplitude = [epsilon](double x) { return epsilon / (pi * std::sqrt(x) * (epsilon + x)); };

  cplx sum = 0.0;

  // Near the origin substitute x = u^2 so the x^{-1/2} factor disappears.
  const double x_split = 0.01 * std::min(epsilon, 1.0);
  const double u_split = std::sqrt(x_split);
  const int n_low = 1 + static_cast<int>(std::ceil(x_split * tau));
  const double hu = u_split / n_low;
  for (int p = 0; p < n_low; ++p) {
    const double mid = (p + 0.5) * hu;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      for (double sgn : {-1.0, 1.0}) {
        const double u = mid + sgn * 0.5 * hu * kGlNodes[k];
        const double amp = 2.0 * epsilon / (pi * (epsilon + u * u));
        sum += 0.5 * hu * kGlWeights[k] * amp * std::polar(1.0, -u * u * tau);
      }
    }
  }

  // Geometric Filon mesh up to the cutoff. Small tau needs a larger cutoff
  // before the asymptotic tail becomes accurate.
  const double upper = std::max(quad.cutoff, 40.0 / tau);
  double x0 = x_split;
  while (x0 < upper) {
    double h = 0.5 * quad.panel_ratio * x0;
    if (x0 + 2.0 * h > upper) h = 0.5 * (upper - x0);
    const double xc = x0 + h;
    const double fm = amplitude(x0);
    const double f0 = amplitude(xc);
    const double fp = amplitude(xc + h);
    const FilonMoments m = filon_moments(tau * h);
    sum += h * std::polar(1.0, -tau * xc) *
           (f0 * m.m0 + 0.5 * (fp - fm) * m.m1 + 0.5 * (fp - 2.0 * f0 + fm) * m.m2);
    x0 = xc + h;
  }

  // int_W^inf f e^{-i tau x} dx = e^{-i tau W} sum_k f^{(k)}(W) / (i tau)^{k+1}
  const double w = upper;
  const double f = amplitude(w);
  const double l1 = -0.5 / w - 1.0 / (epsilon + w);
  const double l2 = 0.5 / (w * w) + 1.0 / ((epsilon + w) * (epsilon + w));
  const double d1 = f * l1;
  const double d2 = f * (l1 * l1 + l2);
  const cplx it{0.0, tau};
  sum += std::polar(1.0, -tau * w) * (f / it + d1 / (it * it) + d2 / (it * it * it));
  return sum;
}

cplx kernel_regular_part(const DomModel& model, CouplingStrength g, double tau,
                         const KernelQuadrature& quad) {
  return std::visit(
      overloaded{
          [&](const IsotropicEdge&) { return cplx{0.0}; },
          [&](const SmoothedEdge& m) {
            return -g.c() * std::polar(1.0, -m.delta_g * tau) *
                   smoothed_edge_correction(m.epsilon, tau, quad);
          },
          [&](const EdgePlusDeltaDefect& m) {
            return m.g1 * m.g1 * std::polar(1.0, -m.delta_c * tau);
          },
          [&](const EdgePlusLorentzianDefect& m) {
            return m.g1 * m.g1 * std::exp(-0.5 * m.gamma_c * tau) *
                   std::polar(1.0, -m.delta_c * tau);
          },
      },
      model.variant());
}

cplx kernel_time(const DomModel& model, CouplingStrength g, double tau,
                 const KernelQuadrature& quad) {
  if (!(tau > 0.0)) throw NonPositiveTau(tau);
  const KernelSplit s = kernel_singular_part(model, g);
  return s.singular_amplitude * std::polar(1.0, -s.edge_phase_rate * tau) / std::sqrt(tau) +
         kernel_regular_part(model, g, tau, quad);
}

DensityChannels dom_density(const DomModel& model, double x) {
  DensityChannels out;
  const double y = x - model.delta_g();
  if (y > 0.0) {
    if (const auto* m = std::get_if<SmoothedEdge>(&model.variant())) {
      out.continuum = std::sqrt(y) / (pi * (m->epsilon + y));
    } else {
      out.continuum = 1.0 / (pi * std::sqrt(y));
    }
  }
  if (const auto* m = std::get_if<EdgePlusDeltaDefect>(&model.variant())) {
    out.defect = DefectLine{DefectShape::Discrete, m->delta_c, m->g1 * m->g1, 0.0};
  } else if (const auto* m = std::get_if<EdgePlusLorentzianDefect>(&model.variant())) {
    out.defect = DefectLine{DefectShape::Lorentzian, m->delta_c, m->g1 * m->g1, 0.5 * m->gamma_c};
  }
  return out;
}

double continuum_weight(const DomModel& model, double a, double b) {
  if (!(a >= 0.0 && b >= a)) throw std::invalid_argument("continuum_weight: need 0 <= a <= b");
  if (const auto* m = std::get_if<SmoothedEdge>(&model.variant())) {
    const double se = std::sqrt(m->epsilon);
    auto prim = [se](double x) { return std::sqrt(x) - se * std::atan(std::sqrt(x) / se); };
    return 2.0 / pi * (prim(b) - prim(a));
  }
  return 2.0 / pi * (std::sqrt(b) - std::sqrt(a));
}

}  // namespace darkspec
