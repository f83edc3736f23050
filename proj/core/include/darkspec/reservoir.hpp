#pragma once

// Structured-reservoir density-of-modes models and their memory kernels.
//
// All frequencies are detunings in units of the Markovian decay rate gamma:
// delta_g is the band edge measured from the |2> -> |1> transition, delta_c
// the defect mode, and delta_lambda the emitted photon measured from |2> -> |0>.

#include <complex>
#include <optional>
#include <string_view>
#include <variant>

namespace darkspec {

using cplx = std::complex<double>;

struct IsotropicEdge {
  double delta_g = 0.0;
};

struct SmoothedEdge {
  double delta_g = 0.0;
  double epsilon = 0.0;
};

struct EdgePlusDeltaDefect {
  double delta_g = 0.0;
  double g1 = 0.0;
  double delta_c = 0.0;
};

struct EdgePlusLorentzianDefect {
  double delta_g = 0.0;
  double g1 = 0.0;
  double delta_c = 0.0;
  double gamma_c = 0.0;
};

enum class DomKind { IsotropicEdge, SmoothedEdge, EdgePlusDeltaDefect, EdgePlusLorentzianDefect };

std::string_view to_string(DomKind kind);

class DomModel {
 public:
  using Variant =
      std::variant<IsotropicEdge, SmoothedEdge, EdgePlusDeltaDefect, EdgePlusLorentzianDefect>;

  // Throws InvalidModel on a negative epsilon/g1, a non-positive gamma_c,
  // non-finite parameters, or a smoothed edge with epsilon == 0.
  explicit DomModel(Variant v);

  static DomModel isotropic_edge(double delta_g);
  static DomModel smoothed_edge(double delta_g, double epsilon);
  static DomModel edge_plus_delta_defect(double delta_g, double g1, double delta_c);
  static DomModel edge_plus_lorentzian_defect(double delta_g, double g1, double delta_c,
                                              double gamma_c);

  DomKind kind() const noexcept;
  const Variant& variant() const noexcept { return v_; }

  double delta_g() const noexcept;
  // Zero for models without the parameter.
  double epsilon() const noexcept;
  double g1() const noexcept;
  double delta_c() const noexcept;
  double gamma_c() const noexcept;

  bool has_defect() const noexcept;

  // Copy with a different band edge; used by figure presets.
  DomModel with_delta_g(double delta_g) const;

  friend bool operator==(const DomModel& a, const DomModel& b);

 private:
  Variant v_;
};

// Coupling to the structured reservoir. Kernels use g^{3/2}.
class CouplingStrength {
 public:
  CouplingStrength() = default;
  explicit CouplingStrength(double g);

  double g() const noexcept { return g_; }
  double c() const noexcept;

  friend bool operator==(CouplingStrength, CouplingStrength) = default;

 private:
  double g_ = 0.0;
};

// sqrt(x + i0+): sqrt(x) for x >= 0, i sqrt(-x) for x < 0.
cplx branch_sqrt(double x) noexcept;

// Laplace-transformed kernel at s -> -i delta_lambda. Throws PoleAtBandEdge
// (bare square-root divisor, delta_lambda == delta_g) or PoleAtDefect (delta
// defect, delta_lambda == delta_c).
cplx kernel_laplace(const DomModel& model, CouplingStrength g, double delta_lambda);

// Controls the frequency quadrature used for the smoothed-edge memory kernel.
struct KernelQuadrature {
  // Upper frequency limit measured from the band edge; beyond it the
  // integral is replaced by its asymptotic oscillatory-tail expansion.
  double cutoff = 400.0;
  // Relative panel width of the geometric Filon mesh.
  double panel_ratio = 0.01;
};

// Memory kernel K(tau), tau > 0 (throws NonPositiveTau otherwise).
cplx kernel_time(const DomModel& model, CouplingStrength g, double tau,
                 const KernelQuadrature& quad = {});

// The band-edge part of K(tau) is A e^{-i delta_g tau} / sqrt(tau) plus a
// regular remainder. Solvers that integrate the singular part analytically
// use this split.
struct KernelSplit {
  cplx singular_amplitude;  // A
  double edge_phase_rate;   // delta_g
};

KernelSplit kernel_singular_part(const DomModel& model, CouplingStrength g);

// K(tau) minus the singular part. Finite at tau = 0 (the limit is returned).
cplx kernel_regular_part(const DomModel& model, CouplingStrength g, double tau,
                         const KernelQuadrature& quad = {});

// Smoothed-edge correction
//   (1/pi) int_0^inf eps / (sqrt(x) (eps + x)) e^{-i x tau} dx,
// which is the isotropic density minus the smoothed one. Equals sqrt(eps)
// at tau = 0.
cplx smoothed_edge_correction(double epsilon, double tau, const KernelQuadrature& quad = {});

enum class DefectShape { Discrete, Lorentzian };

struct DefectLine {
  DefectShape shape;
  double center;      // delta_c
  double weight;      // g1^2
  double half_width;  // gamma_c / 2, zero for a discrete mode
};

struct DensityChannels {
  double continuum = 0.0;  // band-edge density at the offset
  std::optional<DefectLine> defect;
};

// Density of modes at offset x = omega - omega_21.
DensityChannels dom_density(const DomModel& model, double x);

// Integral of the band-edge density over [delta_g + a, delta_g + b], 0 <= a <= b.
double continuum_weight(const DomModel& model, double a, double b);

}  // namespace darkspec
