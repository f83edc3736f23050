#include "darkspec/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "darkspec/errors.hpp"

namespace darkspec {
namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

constexpr std::array<double, 4> kGlNodes{0.1834346424956498, 0.5255324099163290,
                                         0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights{0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

// int_0^1 f(v) dv, composite 8-point Gauss-Legendre.
template <class F>
auto integrate_unit(F&& f, int panels = 32) {
  decltype(f(0.5)) sum{};
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      sum += 0.5 * h * kGlWeights[k] * (f(mid - 0.5 * h * kGlNodes[k]) + f(mid + 0.5 * h * kGlNodes[k]));
    }
  }
  return sum;
}

std::size_t step_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
}

// Product-integration weights of tau^{-1/2} against the hat functions on a
// uniform grid: node_weight[j] = alpha_j + beta_{j-1}, end_weight[j] = beta_{j-1}.
struct SingularWeights {
  std::vector<double> alpha;  // left-node share of interval [j, j+1]
  std::vector<double> beta;   // right-node share
};

SingularWeights singular_weights(std::size_t n, double dt) {
  SingularWeights w;
  w.alpha.resize(n);
  w.beta.resize(n);
  const long double sdt = std::sqrt(static_cast<long double>(dt));
  for (std::size_t j = 0; j < n; ++j) {
    const long double a = static_cast<long double>(j);
    const long double b = a + 1.0L;
    const long double i0 = 2.0L * (std::sqrt(b) - std::sqrt(a));
    const long double i1 = 2.0L / 3.0L * (b * std::sqrt(b) - a * std::sqrt(a));
    w.alpha[j] = static_cast<double>(sdt * (b * i0 - i1));
    w.beta[j] = static_cast<double>(sdt * (i1 - a * i0));
  }
  return w;
}

Trajectory volterra_run(const EmitterConfig& cfg, double t_max, double dt,
                        const KernelQuadrature& quad) {
  const std::size_t n_steps = step_count(t_max, dt);
  const bool driven = cfg.scheme == Scheme::LaserDriven;

  const KernelSplit split = kernel_singular_part(cfg.model, cfg.g);
  const SingularWeights sw = singular_weights(n_steps + 1, dt);

  // kappa[j]: interior convolution coefficient; end[j]: coefficient of y_0
  // when j is the last node.
  std::vector<cplx> kappa(n_steps + 1), end(n_steps + 1);
  for (std::size_t j = 0; j <= n_steps; ++j) {
    const double tau = static_cast<double>(j) * dt;
    const cplx phase = std::polar(1.0, -split.edge_phase_rate * tau);
    const cplx h = kernel_regular_part(cfg.model, cfg.g, tau, quad);
    if (j == 0) {
      kappa[0] = split.singular_amplitude * sw.alpha[0] + 0.5 * dt * h;
      end[0] = 0.0;
    } else {
      kappa[j] = split.singular_amplitude * phase * (sw.alpha[j] + sw.beta[j - 1]) + dt * h;
      end[j] = split.singular_amplitude * phase * sw.beta[j - 1] + 0.5 * dt * h;
    }
  }

  Trajectory traj;
  traj.dt = dt;
  traj.t_max = static_cast<double>(n_steps) * dt;
  traj.gamma = cfg.gamma;
  if (cfg.g.c() > 0.0) traj.branch_frequency = cfg.model.delta_g();
  traj.b2.assign(n_steps + 1, 0.0);
  std::vector<cplx>& y = traj.b2;
  std::vector<cplx> z(n_steps + 1, 0.0);
  y[0] = cfg.b2_0;
  z[0] = cfg.b3_0;

  const double half = 0.5 * dt;
  const double om = driven ? cfg.omega : 0.0;
  const double de = cfg.delta;
  cplx conv_n = 0.0;  // C_n
  for (std::size_t n = 0; n < n_steps; ++n) {
    const std::size_t m = n + 1;
    cplx rest = end[m] * y[0];
    for (std::size_t j = 1; j < m; ++j) rest += kappa[j] * y[m - j];

    const cplx f_n = -0.5 * cfg.gamma * y[n] - kI * om * z[n] - conv_n;
    const cplx g_n = -kI * (de * z[n] + om * y[n]);

    // [a11 a12; a21 a22] [y; z] = [r1; r2]
    const cplx a11 = 1.0 + half * (0.5 * cfg.gamma + kappa[0]);
    const cplx a12 = half * kI * om;
    const cplx a21 = half * kI * om;
    const cplx a22 = 1.0 + half * kI * de;
    const cplx r1 = y[n] + half * f_n - half * rest;
    const cplx r2 = z[n] + half * g_n;
    const cplx det = a11 * a22 - a12 * a21;
    y[m] = (r1 * a22 - a12 * r2) / det;
    z[m] = (a11 * r2 - a21 * r1) / det;
    conv_n = kappa[0] * y[m] + rest;
  }
  if (driven) traj.b3 = std::move(z);
  return traj;
}

}  // namespace

double Trajectory::residual_population() const {
  if (b2.empty()) return 0.0;
  double p = std::norm(b2.back());
  if (b3 && !b3->empty()) p += std::norm(b3->back());
  return p;
}

Trajectory solve_volterra(const EmitterConfig& cfg, double t_max, double dt,
                          const VolterraOptions& options) {
  cfg.validate(true);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solve_volterra: dt > 0");
  if (!(t_max >= dt)) throw std::invalid_argument("solve_volterra: t_max >= dt");
  if (cfg.gamma > 0.0 && t_max < 10.0 / cfg.gamma)
    throw std::invalid_argument("solve_volterra: t_max must be >= 10/gamma");

  Trajectory coarse = volterra_run(cfg, t_max, dt, options.quadrature);
  if (options.check_convergence) {
    const double window = std::min(coarse.t_max, std::max(options.convergence_window, dt));
    const Trajectory fine = volterra_run(cfg, window, 0.5 * dt, options.quadrature);
    double change = 0.0;
    for (std::size_t n = 0; n < coarse.b2.size() && 2 * n < fine.b2.size(); ++n) {
      change = std::max(change, std::abs(coarse.b2[n] - fine.b2[2 * n]));
      if (coarse.b3) change = std::max(change, std::abs((*coarse.b3)[n] - (*fine.b3)[2 * n]));
    }
    if (change > options.convergence_tol) throw StepTooLarge(dt, change);
  }
  return coarse;
}

namespace {

void check_policy(const HorizonPolicy& policy) {
  if (!(policy.t_start > 0.0) || !(policy.t_limit >= policy.t_start))
    throw std::invalid_argument("HorizonPolicy: need 0 < t_start <= t_limit");
}

}  // namespace

Trajectory solve_volterra_adaptive(const EmitterConfig& cfg, double dt, const HorizonPolicy& policy,
                                   const VolterraOptions& options) {
  check_policy(policy);
  double t_max = policy.t_start;
  VolterraOptions opts = options;
  for (;;) {
    Trajectory traj = solve_volterra(cfg, t_max, dt, opts);
    if (t_max >= policy.t_limit || horizon_sufficient(traj, policy)) return traj;
    // The step size was already checked on the first pass.
    opts.check_convergence = false;
    t_max = std::min(2.0 * t_max, policy.t_limit);
  }
}

BranchTail fit_branch_tail(const Trajectory& traj) {
  BranchTail out;
  if (!traj.branch_frequency || traj.b2.size() < 8) return out;
  const double w = *traj.branch_frequency;
  const std::size_t last = traj.b2.size() - 1;
  const double t_end = static_cast<double>(last) * traj.dt;

  // u(t) = b2(t) e^{i w t} t^{3/2} = c1 + c2 (T/t) / T + c3 (T/t)^2 / T^2,
  // least squares in the scaled basis {1, T/t, (T/t)^2} over [T/2, T].
  std::array<std::array<double, 3>, 3> ata{};
  std::array<cplx, 3> atb{};
  for (std::size_t n = last / 2; n <= last; ++n) {
    const double t = static_cast<double>(n) * traj.dt;
    const cplx u = traj.b2[n] * std::polar(1.0, w * t) * t * std::sqrt(t);
    const double s = t_end / t;
    const std::array<double, 3> basis{1.0, s, s * s};
    for (int i = 0; i < 3; ++i) {
      atb[i] += basis[i] * u;
      for (int j = 0; j < 3; ++j) ata[i][j] += basis[i] * basis[j];
    }
  }
  // Gaussian elimination, 3x3 symmetric positive definite.
  for (int k = 0; k < 3; ++k) {
    for (int i = k + 1; i < 3; ++i) {
      const double f = ata[i][k] / ata[k][k];
      for (int j = k; j < 3; ++j) ata[i][j] -= f * ata[k][j];
      atb[i] -= f * atb[k];
    }
  }
  std::array<cplx, 3> x{};
  for (int i = 2; i >= 0; --i) {
    cplx acc = atb[i];
    for (int j = i + 1; j < 3; ++j) acc -= ata[i][j] * x[j];
    x[i] = acc / ata[i][i];
  }
  out.coefficients = {x[0], x[1] * t_end, x[2] * t_end * t_end};
  const cplx fitted = (x[0] + x[1] + x[2]) * std::polar(1.0, -w * t_end) / (t_end * std::sqrt(t_end));
  const double mag = std::abs(traj.b2[last]);
  out.endpoint_mismatch = mag > 0.0 ? std::abs(traj.b2[last] - fitted) / mag : 0.0;
  return out;
}

bool horizon_sufficient(const Trajectory& traj, const HorizonPolicy& policy) {
  if (traj.residual_population() > policy.residual_tol) return false;
  return fit_branch_tail(traj).endpoint_mismatch <= policy.tail_mismatch_tol;
}

cplx power_tail_integral(double p, double w, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("power_tail_integral: t > 0");
  const int steps = static_cast<int>(std::lround(p - 0.5));
  if (steps < 1 || steps > 3 || std::abs(p - 0.5 - steps) > 1e-12)
    throw std::invalid_argument("power_tail_integral: p must be 3/2, 5/2 or 7/2");
  if (w == 0.0) return std::pow(t, 1.0 - p) / (p - 1.0);

  const cplx edge = std::polar(1.0, w * t);
  const double wt = std::abs(w * t);
  if (wt >= 30.0) {
    // Repeated integration by parts: e^{iwT} (i/w) T^{-p} sum_k (p)_k / (i w T)^k.
    const cplx ratio = 1.0 / (kI * w * t);
    cplx term = 1.0;
    cplx sum = 0.0;
    double prev = 1e300;
    for (int k = 0; k < 40; ++k) {
      const double mag = std::abs(term);
      if (mag > prev || mag < 1e-17 * std::abs(sum)) break;
      sum += term;
      prev = mag;
      term *= (p + k) * ratio;
    }
    return edge * (kI / w) * std::pow(t, -p) * sum;
  }

  // E_{1/2} = sqrt(pi/|w|) e^{i sgn(w) pi/4} - 2 int_0^{sqrt T} e^{i w u^2} du,
  // then E_{q+1} = (i w E_q + T^{-q} e^{iwT}) / q.
  const double root = std::sqrt(t);
  const cplx head = 2.0 * root * integrate_unit([&](double v) {
    const double u = root * v;
    return std::polar(1.0, w * u * u);
  }, 64);
  cplx e = std::sqrt(pi / std::abs(w)) * std::polar(1.0, std::copysign(0.25 * pi, w)) - head;
  double q = 0.5;
  for (int k = 0; k < steps; ++k) {
    e = (kI * w * e + std::pow(t, -q) * edge) / q;
    q += 1.0;
  }
  return e;
}

Spectrum spectrum_from_trajectory(const Trajectory& traj, const FrequencyGrid& grid,
                                  double residual_limit) {
  grid.validate();
  if (traj.b2.size() < 2) throw std::invalid_argument("spectrum_from_trajectory: empty trajectory");
  const double residual = traj.residual_population();
  if (!traj.trapping && residual > residual_limit) throw TruncationWarning(residual);

  const std::array<cplx, 3> tail = fit_branch_tail(traj).coefficients;
  const bool with_tail = traj.branch_frequency.has_value() && !traj.trapping;

  Spectrum s;
  s.grid = grid;
  s.values.resize(static_cast<std::size_t>(grid.n));
  const std::size_t last = traj.b2.size() - 1;
  const double t_end = static_cast<double>(last) * traj.dt;
  for (int i = 0; i < grid.n; ++i) {
    const double dl = grid.point(i);
    const cplx step = std::polar(1.0, dl * traj.dt);
    cplx phase = 1.0;
    cplx acc = 0.5 * traj.b2[0];
    for (std::size_t n = 1; n < last; ++n) {
      phase *= step;
      acc += traj.b2[n] * phase;
    }
    acc += 0.5 * traj.b2[last] * std::polar(1.0, dl * t_end);
    acc *= traj.dt;
    if (with_tail) {
      const double w = dl - *traj.branch_frequency;
      for (int k = 0; k < 3; ++k) acc += tail[k] * power_tail_integral(1.5 + k, w, t_end);
    }
    s.values[static_cast<std::size_t>(i)] = traj.gamma * std::norm(acc);
  }
  return s;
}

namespace {

// -int_{x0}^{inf} w(x) / (x - ref) dx for the continuum above the band cutoff,
// substituting x = delta_g + B / v^2.
double band_tail_shift(const EmitterConfig& cfg, double band_width, double ref) {
  const double dg = cfg.model.delta_g();
  if (dg + band_width <= ref) return 0.0;
  const double c = cfg.g.c();
  const double integral = integrate_unit([&](double v) {
    if (v == 0.0) return 0.0;
    const double y = band_width / (v * v);
    const double rho = dom_density(cfg.model, dg + y).continuum;
    return rho * 2.0 * band_width / (v * v * v) / (dg + y - ref);
  });
  return -c * integral;
}

// Same for the two Lorentzian wings beyond +-span around delta_c.
double lorentzian_tail_shift(double g1sq, double delta_c, double gamma_c, double span,
                             double ref) {
  const double hw = 0.5 * gamma_c;
  double total = 0.0;
  for (double side : {-1.0, 1.0}) {
    const double start = delta_c + side * span;
    if ((start - ref) * side <= 0.0) continue;  // pole inside the wing; leave uncorrected
    total += integrate_unit([&](double v) {
      if (v == 0.0) return 0.0;
      const double off = span / v;
      const double x = delta_c + side * off;
      const double lor = hw / (pi * (off * off + hw * hw));
      return lor * span / (v * v) / (x - ref);
    });
  }
  return -g1sq * total;
}

}  // namespace

ModeComb build_mode_comb(const EmitterConfig& cfg, const CombOptions& options) {
  if (!(options.spacing > 0.0) || !(options.band_width > options.spacing))
    throw std::invalid_argument("build_mode_comb: need 0 < spacing < band_width");
  ModeComb comb;
  const double c = cfg.g.c();
  const double dg = cfg.model.delta_g();
  if (c > 0.0) {
    // Bin widths grow geometrically away from the edge up to `spacing`, so
    // the x^{1/2} onset is resolved on the time scales the tail fit uses.
    double a = 0.0;
    double b = std::min(options.edge_min_width, options.spacing);
    while (a < options.band_width) {
      b = std::min(b, options.band_width);
      comb.frequencies.push_back(dg + 0.5 * (a + b));
      comb.couplings.push_back(std::sqrt(c * continuum_weight(cfg.model, a, b)));
      a = b;
      b = a + std::min(options.spacing, std::max(options.edge_ratio * a, options.edge_min_width));
    }
    comb.recurrence_time = 2.0 * pi / options.spacing;
    if (options.tail_correction) {
      comb.tail_shift += band_tail_shift(cfg, options.band_width, options.tail_reference);
    }
  }

  const DomModel& m = cfg.model;
  const double g1sq = m.g1() * m.g1();
  if (m.kind() == DomKind::EdgePlusDeltaDefect && g1sq > 0.0) {
    comb.defect_frequency = m.delta_c();
    comb.defect_coupling = m.g1();
  } else if (m.kind() == DomKind::EdgePlusLorentzianDefect && g1sq > 0.0) {
    const double hw = 0.5 * m.gamma_c();
    const double h = m.gamma_c() / options.lorentzian_points_per_width;
    const auto k_max =
        static_cast<long>(std::llround(options.lorentzian_span * options.lorentzian_points_per_width));
    for (long k = -k_max; k < k_max; ++k) {
      const double a = static_cast<double>(k) * h;
      const double b = a + h;
      const double w = (std::atan(b / hw) - std::atan(a / hw)) / pi;
      comb.frequencies.push_back(m.delta_c() + 0.5 * (a + b));
      comb.couplings.push_back(std::sqrt(g1sq * w));
    }
    comb.recurrence_time = std::min(comb.recurrence_time, 2.0 * pi / h);
    if (options.tail_correction) {
      comb.tail_shift += lorentzian_tail_shift(g1sq, m.delta_c(), m.gamma_c(),
                                               static_cast<double>(k_max) * h,
                                               options.tail_reference);
    }
  }
  return comb;
}

namespace {

// Horizon schedule for comb_run: evolve to the first entry, then continue to
// each later one while `more` returns true.
using ContinuePredicate = std::function<bool(const Trajectory&)>;

CombResult comb_run(const EmitterConfig& cfg, const ModeComb& comb, const FrequencyGrid& grid,
                    const std::vector<double>& horizons, double dt, const EvolveOptions& options,
                    const ContinuePredicate& more) {
  cfg.validate(true);
  grid.validate();
  if (!(dt > 0.0) || !(horizons.front() >= dt))
    throw std::invalid_argument("discretized_mode_evolve: bad time step");
  if (comb.frequencies.size() != comb.couplings.size())
    throw std::invalid_argument("discretized_mode_evolve: comb size mismatch");

  const bool driven = cfg.scheme == Scheme::LaserDriven;
  const bool markov_comb = options.markov == MarkovChannel::Comb;

  // State layout: b2, b3, [defect], reservoir comb, [Markov comb].
  std::vector<double> freq;
  std::vector<double> coup;
  if (comb.defect_frequency) {
    freq.push_back(*comb.defect_frequency);
    coup.push_back(comb.defect_coupling);
  }
  freq.insert(freq.end(), comb.frequencies.begin(), comb.frequencies.end());
  coup.insert(coup.end(), comb.couplings.begin(), comb.couplings.end());
  const std::size_t n_res = freq.size();

  std::vector<double> markov_freq;
  double markov_coupling = 0.0;
  if (markov_comb) {
    const double h = options.markov_spacing;
    const auto count = static_cast<std::size_t>(std::llround(2.0 * options.markov_half_width / h));
    for (std::size_t j = 0; j < count; ++j) {
      markov_freq.push_back(-options.markov_half_width + (static_cast<double>(j) + 0.5) * h);
    }
    markov_coupling = std::sqrt(cfg.gamma * h / (2.0 * pi));
    freq.insert(freq.end(), markov_freq.begin(), markov_freq.end());
    coup.insert(coup.end(), markov_freq.size(), markov_coupling);
    if (grid.min < markov_freq.front() || grid.max > markov_freq.back())
      throw std::invalid_argument("discretized_mode_evolve: grid outside the Markovian comb");
  }
  const std::size_t n_modes = freq.size();

  const cplx b2_diag = cplx{comb.tail_shift, markov_comb ? 0.0 : -0.5 * cfg.gamma};
  const double om = driven ? cfg.omega : 0.0;

  // y = [b2, b3, modes...]; dy/dt = -i H y
  const std::size_t dim = 2 + n_modes;
  auto deriv = [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < n_modes; ++k) {
      sum += coup[k] * y[2 + k];
      dy[2 + k] = -kI * (freq[k] * y[2 + k] + coup[k] * y[0]);
    }
    dy[0] = -kI * (b2_diag * y[0] + om * y[1] + sum);
    dy[1] = -kI * (cfg.delta * y[1] + om * y[0]);
    if (!driven) dy[1] = 0.0;
  };

  std::vector<cplx> y(dim, 0.0), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  y[0] = cfg.b2_0;
  y[1] = driven ? cfg.b3_0 : 0.0;

  CombResult result;
  Trajectory& traj = result.trajectory;
  traj.dt = dt;
  traj.gamma = cfg.gamma;
  traj.trapping = options.trapping;
  if (!comb.frequencies.empty() && cfg.g.c() > 0.0) traj.branch_frequency = cfg.model.delta_g();
  std::vector<cplx> b3;

  auto record = [&]() {
    traj.b2.push_back(y[0]);
    if (driven) b3.push_back(y[1]);
    double norm = 0.0;
    for (const cplx& v : y) norm += std::norm(v);
    result.norm_history.push_back(norm);
  };

  record();
  std::size_t done = 0;
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const std::size_t target = step_count(horizons[h], dt);
    for (; done < target; ++done) {
      deriv(y, k1);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
      deriv(tmp, k2);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
      deriv(tmp, k3);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + dt * k3[i];
      deriv(tmp, k4);
      for (std::size_t i = 0; i < dim; ++i) {
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      record();
    }
    traj.t_max = static_cast<double>(done) * dt;
    if (driven) traj.b3 = b3;
    if (h + 1 < horizons.size() && !(more && more(traj))) break;
  }

  if (!markov_comb) {
    result.spectrum = spectrum_from_trajectory(traj, grid, options.residual_limit);
    return result;
  }

  double drift = 0.0;
  for (double nrm : result.norm_history) drift = std::max(drift, std::abs(nrm - 1.0));
  if (drift > options.norm_tolerance) throw NormDrift(drift);

  // gamma |b_lambda|^2 / g_lambda^2 at the Markovian mode frequencies.
  const std::size_t off = 2 + n_res;
  std::vector<double> mode_spec(markov_freq.size());
  for (std::size_t j = 0; j < markov_freq.size(); ++j) {
    mode_spec[j] = cfg.gamma * std::norm(y[off + j]) / (markov_coupling * markov_coupling);
  }
  Spectrum& s = result.spectrum;
  s.grid = grid;
  s.values.resize(static_cast<std::size_t>(grid.n));
  const double h = options.markov_spacing;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    const double pos = (x - markov_freq.front()) / h;
    auto j = static_cast<std::size_t>(std::floor(pos));
    j = std::min(j, markov_freq.size() - 2);
    const double frac = pos - static_cast<double>(j);
    s.values[static_cast<std::size_t>(i)] = (1.0 - frac) * mode_spec[j] + frac * mode_spec[j + 1];
  }
  return result;
}

}  // namespace

CombResult discretized_mode_evolve(const EmitterConfig& cfg, const ModeComb& comb,
                                   const FrequencyGrid& grid, double t_max, double dt,
                                   const EvolveOptions& options) {
  return comb_run(cfg, comb, grid, {t_max}, dt, options, nullptr);
}

CombResult discretized_mode_evolve_adaptive(const EmitterConfig& cfg, const ModeComb& comb,
                                            const FrequencyGrid& grid, double dt,
                                            const HorizonPolicy& policy,
                                            const EvolveOptions& options) {
  check_policy(policy);
  const double limit = std::min(policy.t_limit, 0.7 * comb.recurrence_time);
  std::vector<double> horizons{std::min(policy.t_start, limit)};
  while (horizons.back() < limit) {
    horizons.push_back(std::min(2.0 * horizons.back(), limit));
  }
  return comb_run(cfg, comb, grid, horizons, dt, options, [&](const Trajectory& traj) {
    return !horizon_sufficient(traj, policy);
  });
}

double compare_spectra(const Spectrum& a, const Spectrum& b, double floor_frac) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw GridMismatch("compare_spectra: spectra sampled on different grids");
  const double peak = std::max(a.peak(), b.peak());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double m = std::max(a.values[i], b.values[i]);
    if (m <= 0.0 || m < floor_frac * peak) continue;
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / m);
  }
  return worst;
}

}  // namespace darkspec
