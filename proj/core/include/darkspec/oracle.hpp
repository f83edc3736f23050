#pragma once

// Time-domain validators for the closed-form spectra.
//
// solve_volterra integrates the reduced amplitude equations with the memory
// kernel; discretized_mode_evolve replaces the structured reservoir by a
// finite comb of modes and evolves the Schroedinger equation directly. Both
// rebuild the Markovian-channel spectrum by projecting b2(t) onto e^{i dl t}.

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "darkspec/spectra.hpp"

namespace darkspec {

struct Trajectory {
  double dt = 0.0;
  double t_max = 0.0;
  double gamma = 1.0;
  std::vector<cplx> b2;
  std::optional<std::vector<cplx>> b3;
  // Set when the configuration is expected to keep excited population
  // (transition deep inside the gap).
  bool trapping = false;
  // Frequency of the band-edge branch point. When set, b2 is continued past
  // the horizon by its power-law asymptote
  //   e^{-i w t} (c1 t^{-3/2} + c2 t^{-5/2} + c3 t^{-7/2})
  // fitted on the second half of the trajectory.
  std::optional<double> branch_frequency;

  double residual_population() const;
};

struct VolterraOptions {
  bool check_convergence = true;
  double convergence_tol = 1e-3;
  // The dt/2 rerun covers [0, min(t_max, convergence_window)], where the
  // dynamics are fastest.
  double convergence_window = 50.0;
  KernelQuadrature quadrature;
};

// Rule for extending a trajectory until its remainder is a clean power-law
// tail: residual population <= residual_tol and, if a branch frequency is
// set, the fitted tail reproduces b2(t_max) to tail_mismatch_tol.
struct HorizonPolicy {
  double t_start = 50.0;
  double t_limit = 400.0;
  double residual_tol = 1e-6;
  double tail_mismatch_tol = 1e-2;
};

bool horizon_sufficient(const Trajectory& traj, const HorizonPolicy& policy);

// Integrates the reduced amplitude equations on [0, t_max] with step dt.
// Throws StepTooLarge if halving dt moves the trajectory by more than
// options.convergence_tol (sup norm).
Trajectory solve_volterra(const EmitterConfig& cfg, double t_max, double dt,
                          const VolterraOptions& options = {});

// solve_volterra with t_max doubled from policy.t_start until
// horizon_sufficient or policy.t_limit.
Trajectory solve_volterra_adaptive(const EmitterConfig& cfg, double dt,
                                   const HorizonPolicy& policy = {},
                                   const VolterraOptions& options = {});

struct BranchTail {
  std::array<cplx, 3> coefficients{};  // c1..c3
  // |b2(T) - fit(T)| / |b2(T)| at the last sample.
  double endpoint_mismatch = 0.0;
};

// Zero coefficients if the trajectory carries no branch frequency.
BranchTail fit_branch_tail(const Trajectory& traj);

// int_T^inf t^{-p} e^{i w t} dt for p in {3/2, 5/2, 7/2}.
cplx power_tail_integral(double p, double w, double t);

// gamma |int_0^inf b2(t) e^{i dl t} dt|^2: trapezoid up to t_max plus the
// analytic integral of the fitted branch-point tail. Throws
// TruncationWarning if the residual population exceeds residual_limit and
// the trajectory is not flagged as trapping.
Spectrum spectrum_from_trajectory(const Trajectory& traj, const FrequencyGrid& grid,
                                  double residual_limit = 0.02);

struct ModeComb {
  // Structured-reservoir modes: detunings from omega_21 and couplings.
  std::vector<double> frequencies;
  std::vector<double> couplings;
  // Discrete defect mode, if any.
  std::optional<double> defect_frequency;
  double defect_coupling = 0.0;
  // Energy shift on |2> standing in for the modes above the band cutoff.
  double tail_shift = 0.0;
  // 2 pi over the widest mode spacing: the comb revives after this time.
  double recurrence_time = std::numeric_limits<double>::infinity();

  std::size_t size() const noexcept { return frequencies.size(); }
};

struct CombOptions {
  double band_width = 40.0;  // continuum sampled on [delta_g, delta_g + band_width]
  double spacing = 0.02;      // widest band bin; sets the recurrence time 2 pi / spacing
  double edge_ratio = 0.01;   // bin width / distance from the edge near delta_g
  double edge_min_width = 1e-4;
  double lorentzian_span = 10.0;  // in units of gamma_c on each side
  double lorentzian_points_per_width = 40.0;
  bool tail_correction = true;
  double tail_reference = 0.0;  // delta_lambda at which the cut-off tail shift is matched
};

ModeComb build_mode_comb(const EmitterConfig& cfg, const CombOptions& options = {});

enum class MarkovChannel {
  Damping,  // exact -gamma/2 b2 term
  Comb,     // explicit flat comb; evolution is unitary
};

struct EvolveOptions {
  MarkovChannel markov = MarkovChannel::Damping;
  double markov_half_width = 40.0;
  double markov_spacing = 0.02;
  double norm_tolerance = 1e-6;
  bool trapping = false;
  double residual_limit = 0.02;
};

struct CombResult {
  Spectrum spectrum;
  std::vector<double> norm_history;  // sum of |amplitude|^2 after each step, starting at t = 0
  Trajectory trajectory;
};

// Fixed-step RK4 evolution of the discretized amplitude equations. In Comb
// mode the spectrum comes from the Markovian mode amplitudes and NormDrift is
// raised if the norm leaves 1 by more than norm_tolerance.
CombResult discretized_mode_evolve(const EmitterConfig& cfg, const ModeComb& comb,
                                   const FrequencyGrid& grid, double t_max, double dt,
                                   const EvolveOptions& options = {});

// Same evolution continued in doublings from policy.t_start until
// horizon_sufficient or min(policy.t_limit, 0.7 * comb.recurrence_time).
CombResult discretized_mode_evolve_adaptive(const EmitterConfig& cfg, const ModeComb& comb,
                                            const FrequencyGrid& grid, double dt,
                                            const HorizonPolicy& policy = {},
                                            const EvolveOptions& options = {});

// max |a - b| / max(a, b) over points where max(a, b) >= floor_frac * peak.
// Throws GridMismatch if the grids differ.
double compare_spectra(const Spectrum& a, const Spectrum& b, double floor_frac = 0.1);

}  // namespace darkspec
