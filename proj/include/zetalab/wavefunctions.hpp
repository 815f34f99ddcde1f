#ifndef ZETALAB_WAVEFUNCTIONS_HPP
#define ZETALAB_WAVEFUNCTIONS_HPP

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// Mixing parameter of the operator, 0 <= beta <= 1.
struct BetaParam {
  double value = 0.5;

  static BetaParam make(double beta);
  /// PreconditionError unless 0 < beta < 1 (needed by the decay bounds).
  void require_open() const;
};

/// A point of the half-plane y >= 0.
struct HalfPlanePoint {
  double x = 0.0;
  double y = 0.0;

  static HalfPlanePoint make(double x, double y);
};

enum class EnvelopeKind { fermi, exponential, gaussian, sampled };

/// The decaying profile g(xi). Analytic kinds extend to complex xi inside a
/// sector around the positive axis; the sampled kind is piecewise linear in
/// xi, zero beyond its last node, and real-axis only.
class EnvelopeSpec {
 public:
  static EnvelopeSpec fermi() { return EnvelopeSpec(EnvelopeKind::fermi, {}); }
  static EnvelopeSpec exponential() { return EnvelopeSpec(EnvelopeKind::exponential, {}); }
  static EnvelopeSpec gaussian() { return EnvelopeSpec(EnvelopeKind::gaussian, {}); }
  /// Nodes xi_0 = 0 < xi_1 < ... with values; `parameters` holds them interleaved.
  static EnvelopeSpec sampled(const std::vector<double>& xi, const std::vector<double>& g);

  EnvelopeKind kind() const noexcept { return kind_; }
  const std::vector<double>& parameters() const noexcept { return parameters_; }
  std::string_view name() const noexcept;

  Complex operator()(Complex xi) const;
  /// Largest |arg xi| for which the complex extension decays; 0 for sampled.
  double max_sector_angle() const noexcept;

 private:
  EnvelopeSpec(EnvelopeKind kind, std::vector<double> parameters) : kind_(kind), parameters_(std::move(parameters)) {}
  EnvelopeKind kind_;
  std::vector<double> parameters_;
};

/// The weight f(k) of a superposition over boosts; `unit` is f = 1.
class ScaleWeightSpec {
 public:
  static ScaleWeightSpec unit() { return ScaleWeightSpec({}); }
  /// Linear in log k between samples, zero outside them.
  static ScaleWeightSpec sampled(std::vector<std::pair<double, double>> samples);

  bool is_unit() const noexcept { return samples_.empty(); }
  const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }
  double operator()(double k) const;

 private:
  explicit ScaleWeightSpec(std::vector<std::pair<double, double>> samples) : samples_(std::move(samples)) {}
  std::vector<std::pair<double, double>> samples_;
};

/// k(t) = t^power; power 0 is the constant map k = 1.
struct ScaleMap {
  double power = 0.0;
  Complex operator()(Complex t) const { return power == 0.0 ? Complex{1.0, 0.0} : std::exp(power * std::log(t)); }
};

enum class Phi1Variant { interval, halfline };

// ---------------------------------------------------------------------------
// Pointwise integrands

/// Any analytic profile; EnvelopeSpec converts implicitly.
using EnvelopeFunction = std::function<Complex(Complex)>;

/// exp(i x t^{1-beta}) g(t + y t^beta).
Complex eval_G0(HalfPlanePoint p, double t, BetaParam beta, const EnvelopeFunction& g);

/// u^{theta-1} (1-u)^{-theta} exp(-i u x y) g(y u^beta (1-u)^{1-beta}), 0 < u < 1.
Complex eval_G1(HalfPlanePoint p, double u, Complex theta, BetaParam beta, const EnvelopeFunction& g);

// ---------------------------------------------------------------------------
// Solution families

/// phi(x, y) = int_0^inf t^{z-1} exp(i x t^{1-beta}) g(t + y t^beta) dt, Re z > 0.
/// Integrated along the ray arg t = alpha that minimises the integrand's L1
/// norm among admissible angles; Im z < 0 is mapped to Im z > 0 through
/// phi(x, y, conj z) = conj phi(-x, y, z).
QuadratureResult eval_phi_general(HalfPlanePoint p, Complex z, BetaParam beta, const EnvelopeSpec& g,
                                  const ToleranceSpec& tol = ToleranceSpec::smooth());

/// f_0 = eval_phi_general with the fermi envelope.
QuadratureResult eval_f0(HalfPlanePoint p, Complex z, BetaParam beta, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// F_0 = f_0 / Gamma(z). abs_tol applies to F_0.
QuadratureResult eval_F0(HalfPlanePoint p, Complex z, BetaParam beta, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// phi_1(x, y) = int_0^inf dt t^{z-1}/(1+e^t) int du G_1 with xi scaled by k(t).
/// The interval variant integrates u over (0, 1); the halfline variant uses
/// u^{theta-1}(1+u)^{-theta} e^{i u x y} g(k y u^beta (1+u)^{1-beta}) over (0, inf)
/// and raises LogDivergence at y = 0. With k = 1 the t-integral separates.
QuadratureResult eval_phi1(HalfPlanePoint p, Complex z, Complex theta, BetaParam beta, const EnvelopeSpec& g,
                           ScaleMap k, Phi1Variant variant, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// Interval variant for g = exponential and k(t) = t. The t-integral is then
/// int t^{z-1} e^{-a t}/(1+e^t) dt = Gamma(z) Phi(-1, z, 1 + a) with
/// a = y u^beta (1-u)^{1-beta}, leaving a single u-quadrature.
QuadratureResult eval_phi1_lerch(HalfPlanePoint p, Complex z, Complex theta, BetaParam beta,
                                 const ToleranceSpec& tol = ToleranceSpec::smooth());

/// Interval variant at y = 0 in closed form: g(0) pi / sin(pi theta) times the
/// Fermi-Dirac integral at z. Independent of x.
QuadratureResult phi1_boundary_value(Complex z, Complex theta, const EnvelopeSpec& g,
                                     const ToleranceSpec& tol = ToleranceSpec::smooth());

// ---------------------------------------------------------------------------
// Boosts and relations

/// (x / k, k y).
HalfPlanePoint boost(HalfPlanePoint p, double k);

/// K(x y) = int_0^inf ds s^{z-1} (s + y)^{-z} e^{i x s}, the kernel multiplying
/// the Fermi-Dirac integral in the factorized scale average. Needs x y != 0.
QuadratureResult scale_average_kernel(double x, double y, Complex z, const ToleranceSpec& tol = ToleranceSpec::smooth());

struct ScaleAverage {
  std::optional<QuadratureResult> direct;      // int dk/k f(k) f_0(x/k, k y)
  std::optional<QuadratureResult> factorized;  // kernel * Fermi-Dirac integral (unit weight only)
  Complex kernel{};
  Complex fermi_dirac{};
  double factor_scale = 0.0;  // |kernel| * |(1 - 2^{1-z}) Gamma(z)|
};

/// Boost average of f_0 at p. The direct path integrates f_0(x e^{-s}, y e^{s})
/// over s on both half-lines; the factorized path is available for the unit weight.
ScaleAverage scale_average(HalfPlanePoint p, Complex z, BetaParam beta, const ScaleWeightSpec& weight,
                           const ToleranceSpec& tol = ToleranceSpec::smooth(), bool with_direct = true);

struct OrthogonalityScalar {
  QuadratureResult reduced;                // Fermi-Dirac integral * int_0^inf conj G(xi) K(xi) dxi
  std::optional<QuadratureResult> direct;  // int_0^cut dx int_0^cut dy conj G(x y) f_0(x, y)
  double scale = 0.0;                      // |int conj G K| * |(1 - 2^{1-z}) Gamma(z)|
  bool truncation_warning = false;         // direct path tail bound above abs_tol
};

OrthogonalityScalar orthogonality_scalar(const EnvelopeSpec& G, Complex z, BetaParam beta, double domain_cut,
                                         const ToleranceSpec& tol = ToleranceSpec::smooth(), bool with_direct = true);

struct Phi1Params {
  Complex z;
  Complex theta;
  BetaParam beta;
  EnvelopeSpec g = EnvelopeSpec::exponential();
  ScaleMap k{1.0};
};

struct F0Params {
  Complex z;
  BetaParam beta;
};

struct CutValue {
  double cut = 0.0;
  Complex value{};
};

struct EigenOrthogonality {
  std::vector<CutValue> ladder;
  bool non_decaying_trend = false;  // |value| grew somewhere along the ladder
};

/// int_{-cut}^{cut} dx int_0^cut dy conj(phi_1) f_0 on each cut, by tensor
/// Gauss-Legendre panels of unit width. PreconditionError when
/// |conj(lambda_1) - lambda| <= 1e-6.
EigenOrthogonality eigen_orthogonality(const Phi1Params& phi1, const F0Params& f0, const std::vector<double>& cuts,
                                       const ToleranceSpec& tol = ToleranceSpec::oscillatory());

/// phi_1 along one row y for g = exponential and k(t) = t. The u-integral of
/// eval_phi1_lerch is replaced by a fixed rule, phi_1(x, y) = sum_j c_j
/// exp(-i u_j x y), so the Lerch values are computed once per row. The rule
/// resolves the phase for |x| <= x_max.
class Phi1Row {
 public:
  Phi1Row(double y, double x_max, const Phi1Params& params, const ToleranceSpec& tol = ToleranceSpec::oscillatory());
  Complex operator()(double x) const;
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  double y_;
  std::vector<double> nodes_;
  std::vector<Complex> coefficients_;
};

enum class RecurrenceForm {
  corrected,   // d/dx F_0(z) = i Gamma(z+1-beta)/Gamma(z) F_0(z+1-beta)
  as_printed,  // d/dx F_0(z) = i F_0(z+1-beta); holds only at beta = 1
};

/// Central-difference d/dx F_0 on the ladder against the shifted evaluation.
ResidualReport derivative_recurrence_residual(HalfPlanePoint p, Complex z, BetaParam beta,
                                              const std::vector<double>& step_ladder,
                                              RecurrenceForm form = RecurrenceForm::corrected);

enum class DecayRay { x_axis, y_axis, diagonal };

struct DecayProbe {
  DecayRay ray = DecayRay::x_axis;
  std::vector<std::pair<double, double>> samples;  // (coordinate, |f_0|); diagonal uses |x y|
  double slope = 0.0;
  double bound_exponent = 0.0;
  double constant = 0.0;      // smallest C with |f_0| <= C coordinate^{bound_exponent} on the samples
  double sup_modulus = 0.0;   // smallest C_0 with |f_0| <= C_0 on the samples
};

/// |f_0| at `samples` geometric points from coordinate 5 to 500 along the ray
/// and the least-squares slope of log |f_0| against log coordinate.
DecayProbe decay_probe(Complex z, BetaParam beta, DecayRay ray, std::size_t samples = 12);

std::string_view to_string(DecayRay ray);

}  // namespace zetalab

#endif  // ZETALAB_WAVEFUNCTIONS_HPP
