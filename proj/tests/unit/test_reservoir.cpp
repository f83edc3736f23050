#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "darkspec/errors.hpp"
#include "darkspec/reservoir.hpp"

using namespace darkspec;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Independent oracle: K~(-i dl) = c [pi rho(dl) - i PV int rho(w) / (w - dl) dw]
// for a band-edge density rho supported on w > delta_g.
template <class Rho>
cplx laplace_by_quadrature(Rho rho_edge, double delta_g, double dl) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double a = dl - delta_g;
  if (a <= 0.0) {
    return {0.0, -es.integrate([&](double y) { return rho_edge(y) / (y - a); })};
  }
  // PV over [0, 2a] after subtracting rho(a); the rest is regular.
  const double near = ts.integrate(
      [&](double y) {
        if (y == a) {
          const double h = 1e-6 * a;
          return (rho_edge(a + h) - rho_edge(a - h)) / (2.0 * h);
        }
        return (rho_edge(y) - rho_edge(a)) / (y - a);
      },
      0.0, 2.0 * a);
  const double far = es.integrate([&](double y) { return rho_edge(y + 2.0 * a) / (y + a); });
  return {pi * rho_edge(a), -(near + far)};
}

// Independent oracle: e^{-i dg tau} int_0^inf rho(y) e^{-i y tau} dy (Ooura).
template <class Rho>
cplx kernel_by_fourier(Rho rho_edge, double delta_g, double tau) {
  boost::math::quadrature::ooura_fourier_cos<double> oc;
  boost::math::quadrature::ooura_fourier_sin<double> os;
  const double c = oc.integrate(rho_edge, tau).first;
  const double s = os.integrate(rho_edge, tau).first;
  return std::polar(1.0, -delta_g * tau) * cplx{c, -s};
}

}  // namespace

TEST(BranchSqrt, SpecExamples) {
  EXPECT_EQ(branch_sqrt(1.0), cplx(1.0, 0.0));
  EXPECT_EQ(branch_sqrt(0.0), cplx(0.0, 0.0));
  EXPECT_EQ(branch_sqrt(-4.0), cplx(0.0, 2.0));
}

TEST(BranchSqrt, SquaresBackWithNonNegativeImaginaryPart) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int k = 0; k < 20000; ++k) {
    const double x = std::ldexp(mant(rng), expo(rng));
    const cplx r = branch_sqrt(x);
    EXPECT_GE(r.imag(), 0.0);
    const cplx sq = r * r;
    EXPECT_NEAR(sq.real(), x, 4e-16 * std::abs(x));
    EXPECT_EQ(sq.imag(), 0.0);
  }
}

TEST(DomModel, RejectsBadParameters) {
  EXPECT_THROW(DomModel::smoothed_edge(0.0, 0.0), InvalidModel);
  EXPECT_THROW(DomModel::smoothed_edge(0.0, -0.1), InvalidModel);
  EXPECT_THROW(DomModel::edge_plus_delta_defect(0.0, -1.0, 0.0), InvalidModel);
  EXPECT_THROW(DomModel::edge_plus_lorentzian_defect(0.0, 1.0, 0.0, 0.0), InvalidModel);
  EXPECT_THROW(DomModel::edge_plus_lorentzian_defect(0.0, 1.0, 0.0, -1.0), InvalidModel);
  EXPECT_THROW(DomModel::isotropic_edge(std::nan("")), InvalidModel);
  EXPECT_THROW(CouplingStrength(-1.0), InvalidModel);
}

TEST(CouplingStrength, KernelsUseThreeHalvesPower) {
  EXPECT_DOUBLE_EQ(CouplingStrength(4.0).c(), 8.0);
  EXPECT_DOUBLE_EQ(CouplingStrength(0.0).c(), 0.0);
}

TEST(KernelLaplace, SpecExamples) {
  const auto iso = DomModel::isotropic_edge(0.0);
  const CouplingStrength g(1.0);
  EXPECT_LT(std::abs(kernel_laplace(iso, g, 1.0) - cplx(1.0, 0.0)), 1e-15);
  EXPECT_LT(std::abs(kernel_laplace(iso, g, -1.0) - cplx(0.0, -1.0)), 1e-15);
  const auto lor = DomModel::edge_plus_lorentzian_defect(0.0, 1.0, -2.0, 1.0);
  EXPECT_THROW(kernel_laplace(lor, g, 0.0), PoleAtBandEdge);
  EXPECT_THROW(kernel_laplace(iso, g, 0.0), PoleAtBandEdge);
}

TEST(KernelLaplace, DeltaDefectPole) {
  const auto m = DomModel::edge_plus_delta_defect(0.0, 1.0, -2.0);
  try {
    kernel_laplace(m, CouplingStrength(1.0), -2.0);
    FAIL() << "expected PoleAtDefect";
  } catch (const PoleAtDefect& e) {
    EXPECT_EQ(e.delta_lambda(), -2.0);
  }
}

TEST(KernelLaplace, IsotropicRealAboveEdgeImaginaryBelow) {
  const auto m = DomModel::isotropic_edge(0.7);
  for (double dl = -5.0; dl <= 5.0; dl += 0.013) {
    if (dl == 0.7) continue;
    const cplx k = kernel_laplace(m, CouplingStrength(1.3), dl);
    if (dl > 0.7) {
      EXPECT_GT(k.real(), 0.0);
      EXPECT_EQ(k.imag(), 0.0);
    } else {
      EXPECT_EQ(k.real(), 0.0);
      EXPECT_LT(k.imag(), 0.0);
    }
  }
}

// Frozen from laplace_by_quadrature (tanh-sinh / exp-sinh) for the smoothed
// edge with delta_g = 1, epsilon = 0.3, g = 1.
TEST(KernelLaplace, SmoothedFrozenQuadratureValues) {
  const struct {
    double dl;
    cplx value;
  } table[] = {
      {-2, {0, -0.43864009261618936}},
      {0, {0, -0.64611063213547704}},
      {0.5, {0, -0.79692111840690705}},
      {1.5, {0.88388347648318444, -0.68465319688479676}},
      {3, {0.61487546190134579, -0.23814024239451448}},
      {7, {0.38880789567986951, -0.086940088493672185}},
  };
  const auto m = DomModel::smoothed_edge(1.0, 0.3);
  for (const auto& row : table) {
    EXPECT_LT(rel(kernel_laplace(m, CouplingStrength(1.0), row.dl), row.value), 1e-6) << row.dl;
  }
}

TEST(KernelLaplace, SmoothedMatchesLiveQuadrature) {
  const double eps = 0.3;
  const double dg = 1.0;
  auto rho = [&](double y) { return y <= 0.0 ? 0.0 : std::sqrt(y) / (eps + y) / pi; };
  const auto m = DomModel::smoothed_edge(dg, eps);
  for (double dl : {-4.0, -0.3, 0.9, 1.0, 1.01, 2.2, 5.5}) {
    const cplx expect = laplace_by_quadrature(rho, dg, dl);
    EXPECT_LT(rel(kernel_laplace(m, CouplingStrength(1.0), dl), expect), 1e-6) << dl;
  }
}

TEST(KernelLaplace, SmoothedTendsToIsotropic) {
  const auto smooth = DomModel::smoothed_edge(0.5, 1e-10);
  const auto iso = DomModel::isotropic_edge(0.5);
  for (double dl = -6.0; dl <= 6.0; dl += 0.01) {
    if (std::abs(dl - 0.5) <= 0.1) continue;
    EXPECT_LT(rel(kernel_laplace(smooth, CouplingStrength(1.0), dl),
                  kernel_laplace(iso, CouplingStrength(1.0), dl)),
              1e-4)
        << dl;
  }
}

TEST(KernelLaplace, DefectVariantsWithZeroCouplingEqualIsotropic) {
  const auto iso = DomModel::isotropic_edge(-0.4);
  const auto delta = DomModel::edge_plus_delta_defect(-0.4, 0.0, 1.0);
  const auto lor = DomModel::edge_plus_lorentzian_defect(-0.4, 0.0, 1.0, 0.5);
  for (double dl = -3.0; dl <= 3.0; dl += 0.05) {
    if (std::abs(dl + 0.4) < 1e-12) continue;
    const cplx k = kernel_laplace(iso, CouplingStrength(2.0), dl);
    EXPECT_EQ(kernel_laplace(delta, CouplingStrength(2.0), dl), k);
    EXPECT_EQ(kernel_laplace(lor, CouplingStrength(2.0), dl), k);
  }
  // g1 = 0 removes the defect pole as well.
  EXPECT_NO_THROW(kernel_laplace(delta, CouplingStrength(2.0), 1.0));
}

TEST(KernelLaplace, DefectTerms) {
  const CouplingStrength g(1.0);
  const double dl = 2.0;
  const cplx edge = kernel_laplace(DomModel::isotropic_edge(0.0), g, dl);
  const cplx with_delta = kernel_laplace(DomModel::edge_plus_delta_defect(0.0, 2.0, -1.0), g, dl);
  EXPECT_LT(std::abs(with_delta - edge - cplx(0.0, 4.0 / 3.0)), 1e-15);
  const cplx with_lor =
      kernel_laplace(DomModel::edge_plus_lorentzian_defect(0.0, 2.0, -1.0, 1.0), g, dl);
  EXPECT_LT(std::abs(with_lor - edge - 4.0 / cplx(0.5, -3.0)), 1e-15);
}

TEST(KernelTime, IsotropicAtPi) {
  const cplx k = kernel_time(DomModel::isotropic_edge(0.0), CouplingStrength(1.0), pi);
  EXPECT_LT(rel(k, std::polar(1.0, -pi / 4.0) / pi), 1e-14);
}

TEST(KernelTime, IsotropicMatchesFourierQuadrature) {
  auto rho = [](double y) { return 1.0 / (pi * std::sqrt(y)); };
  for (double dg : {0.0, 1.0, -1.0}) {
    const auto m = DomModel::isotropic_edge(dg);
    for (double tau = 0.1; tau <= 10.0 + 1e-12; tau += 0.3) {
      EXPECT_LT(rel(kernel_time(m, CouplingStrength(1.0), tau), kernel_by_fourier(rho, dg, tau)),
                1e-4)
          << "dg=" << dg << " tau=" << tau;
    }
  }
}

TEST(KernelTime, DefectOnlyExamples) {
  const CouplingStrength none(0.0);
  for (double tau : {0.1, 1.0, 7.3}) {
    const cplx k = kernel_time(DomModel::edge_plus_delta_defect(0.0, 1.0, 0.0), none, tau);
    EXPECT_LT(std::abs(k - cplx(1.0, 0.0)), 1e-15);
  }
  const cplx k =
      kernel_time(DomModel::edge_plus_lorentzian_defect(0.0, 1.0, 0.0, 2.0), none, 1.0);
  EXPECT_LT(std::abs(k - std::exp(-1.0)), 1e-15);
}

TEST(KernelTime, RejectsNonPositiveTau) {
  const auto m = DomModel::isotropic_edge(0.0);
  EXPECT_THROW(kernel_time(m, CouplingStrength(1.0), 0.0), NonPositiveTau);
  EXPECT_THROW(kernel_time(m, CouplingStrength(1.0), -1.0), NonPositiveTau);
}

// Frozen from kernel_by_fourier (Ooura) for delta_g = 1, epsilon = 0.3, g = 1.
TEST(KernelTime, SmoothedFrozenQuadratureValues) {
  const struct {
    double tau;
    cplx value;
  } table[] = {
      {0.1, {0.66443370893227227, -1.2735008260880423}},
      {0.5, {-0.068294527315691772, -0.48790063769949527}},
      {1, {-0.20194417775190518, -0.20329249046747733}},
      {2, {-0.14352588793548576, 0.058123078277622371}},
      {5, {0.052036578761726224, -0.028639691112468467}},
      {10, {0.021169312037099028, 0.014140406130449194}},
  };
  const auto m = DomModel::smoothed_edge(1.0, 0.3);
  for (const auto& row : table) {
    EXPECT_LT(rel(kernel_time(m, CouplingStrength(1.0), row.tau), row.value), 1e-6) << row.tau;
  }
}

TEST(KernelTime, SmoothedMatchesLiveQuadrature) {
  const double eps = 0.05;
  auto rho = [&](double y) { return std::sqrt(y) / (eps + y) / pi; };
  const auto m = DomModel::smoothed_edge(-0.5, eps);
  for (double tau : {0.05, 0.3, 1.7, 4.0, 12.0, 30.0}) {
    EXPECT_LT(rel(kernel_time(m, CouplingStrength(1.0), tau), kernel_by_fourier(rho, -0.5, tau)),
              1e-6)
        << tau;
  }
}

TEST(KernelTime, SmoothedCutoffConvergence) {
  const auto m = DomModel::smoothed_edge(0.0, 0.3);
  for (double tau : {0.1, 1.0, 10.0}) {
    const cplx base = kernel_time(m, CouplingStrength(1.0), tau, {400.0, 0.01});
    const cplx halved = kernel_time(m, CouplingStrength(1.0), tau, {200.0, 0.01});
    const cplx doubled = kernel_time(m, CouplingStrength(1.0), tau, {800.0, 0.01});
    EXPECT_LT(rel(halved, base), 1e-6) << tau;
    EXPECT_LT(rel(doubled, base), 1e-6) << tau;
  }
}

TEST(KernelTime, SplitReassembles) {
  const CouplingStrength g(1.2);
  for (const DomModel& m :
       {DomModel::isotropic_edge(0.3), DomModel::smoothed_edge(0.3, 0.2),
        DomModel::edge_plus_delta_defect(0.3, 0.8, -1.0),
        DomModel::edge_plus_lorentzian_defect(0.3, 0.8, -1.0, 0.6)}) {
    const KernelSplit split = kernel_singular_part(m, g);
    for (double tau : {0.01, 0.5, 3.0}) {
      const cplx sing =
          split.singular_amplitude * std::polar(1.0, -split.edge_phase_rate * tau) / std::sqrt(tau);
      EXPECT_LT(rel(sing + kernel_regular_part(m, g, tau), kernel_time(m, g, tau)), 1e-12);
    }
  }
}

TEST(SmoothedEdgeCorrection, StartsAtSqrtEpsilon) {
  for (double eps : {0.01, 0.3, 2.0}) {
    EXPECT_NEAR(smoothed_edge_correction(eps, 0.0).real(), std::sqrt(eps), 1e-12);
    EXPECT_NEAR(smoothed_edge_correction(eps, 1e-9).real(), std::sqrt(eps), 1e-3);
  }
}

TEST(DomDensity, SpecExamples) {
  const auto iso = DomModel::isotropic_edge(0.0);
  EXPECT_EQ(dom_density(iso, -1.0).continuum, 0.0);
  EXPECT_NEAR(dom_density(iso, 1.0 / (pi * pi)).continuum, 1.0, 1e-15);
  const auto sm = DomModel::smoothed_edge(0.0, 0.3);
  // (1/pi) sqrt(0.3) / 0.6 by hand: 0.5477225575 / 0.6 / 3.1415926536.
  EXPECT_NEAR(dom_density(sm, 0.3).continuum, 0.29058, 5e-6);
  EXPECT_DOUBLE_EQ(dom_density(sm, 0.3).continuum, std::sqrt(0.3) / 0.6 / pi);
}

TEST(DomDensity, DefectChannels) {
  const auto d = dom_density(DomModel::edge_plus_delta_defect(0.0, 1.5, -2.0), 1.0);
  ASSERT_TRUE(d.defect.has_value());
  EXPECT_EQ(d.defect->shape, DefectShape::Discrete);
  EXPECT_EQ(d.defect->center, -2.0);
  EXPECT_DOUBLE_EQ(d.defect->weight, 2.25);
  EXPECT_EQ(d.defect->half_width, 0.0);
  EXPECT_DOUBLE_EQ(d.continuum, 1.0 / pi);

  const auto l = dom_density(DomModel::edge_plus_lorentzian_defect(0.0, 1.0, -2.0, 3.0), -5.0);
  ASSERT_TRUE(l.defect.has_value());
  EXPECT_EQ(l.defect->shape, DefectShape::Lorentzian);
  EXPECT_DOUBLE_EQ(l.defect->half_width, 1.5);
  EXPECT_EQ(l.continuum, 0.0);
  EXPECT_FALSE(dom_density(DomModel::isotropic_edge(0.0), 1.0).defect.has_value());
}

TEST(DomDensity, NonNegativeAndZeroInGap) {
  for (const DomModel& m : {DomModel::isotropic_edge(0.5), DomModel::smoothed_edge(0.5, 0.1),
                            DomModel::edge_plus_delta_defect(0.5, 1.0, 0.0),
                            DomModel::edge_plus_lorentzian_defect(0.5, 1.0, 0.0, 1.0)}) {
    for (double x = -10.0; x <= 10.0; x += 0.0137) {
      const double rho = dom_density(m, x).continuum;
      EXPECT_GE(rho, 0.0);
      if (x < 0.5) EXPECT_EQ(rho, 0.0);
    }
  }
}

TEST(ContinuumWeight, MatchesQuadratureOfDensity) {
  boost::math::quadrature::tanh_sinh<double> ts;
  // delta_g = 0 keeps the integrand's argument exact next to the 1/sqrt(y) singularity.
  for (const DomModel& m : {DomModel::isotropic_edge(0.0), DomModel::smoothed_edge(0.0, 0.3)}) {
    for (auto [a, b] : {std::pair{0.0, 0.02}, std::pair{0.5, 0.52}, std::pair{3.0, 40.0}}) {
      const double expect =
          ts.integrate([&](double y) { return dom_density(m, y).continuum; }, a, b);
      EXPECT_NEAR(continuum_weight(m, a, b), expect, 1e-12 * std::max(1.0, expect));
    }
  }
}
