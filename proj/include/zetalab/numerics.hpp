#ifndef ZETALAB_NUMERICS_HPP
#define ZETALAB_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zetalab/error.hpp"

namespace zetalab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

bool is_finite(Complex value) noexcept;

// Throws ErrorKind::overflow when either component is NaN or infinite.
Complex require_finite(Complex value, const char* context);

struct ToleranceSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_evaluations = 2'000'000;

  static ToleranceSpec smooth() { return {1e-10, 1e-14, 2'000'000}; }
  static ToleranceSpec oscillatory() { return {1e-7, 1e-12, 2'000'000}; }

  // Throws ErrorKind::precondition on non-positive tolerances or zero budget.
  void validate() const;

  // max(abs_tol, rel_tol * |value|)
  double target(double magnitude) const noexcept;
};

struct QuadratureResult {
  Complex value{};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;

  QuadratureResult& operator+=(const QuadratureResult& other);
};

// ---------------------------------------------------------------------------
// Gamma function
// ---------------------------------------------------------------------------

/// Principal-sheet log Gamma (imaginary part is not reduced modulo 2 pi).
/// Lanczos approximation (g = 607/128, 15 terms) with reflection for Re z < 1/2.
Complex log_gamma(Complex z);

/// Gamma(z). Named to avoid the legacy ::gamma (log Gamma) from <math.h>.
/// PoleError at non-positive integers (tolerance 1e-13),
/// ErrorKind::overflow when |Gamma(z)| exceeds the double range.
Complex gamma_function(Complex z);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

using Integrand = std::function<Complex(double)>;

enum class EndpointMode {
  smooth,        // no transformation
  left_singular, // u = a + (b - a) s^2
  both_singular, // u = a + (m - a) s^2 on the left half, b - u = (b - m) s^2 on the right
};

/// Adaptive Gauss-Kronrod (7/15) over [a, b] with global worst-interval
/// bisection. Power-type endpoint singularities u^p, p > -1, are smoothed by
/// the quadratic substitution selected by `mode`.
QuadratureResult integrate_finite(const Integrand& f, double a, double b, const ToleranceSpec& tol,
                                  EndpointMode mode = EndpointMode::both_singular);

/// Integrand receiving (u, b - u); near the right endpoint the second
/// argument is exact, where 1 - u computed by the caller would not be.
using EndpointIntegrand = std::function<Complex(double, double)>;

QuadratureResult integrate_finite(const EndpointIntegrand& f, double a, double b, const ToleranceSpec& tol,
                                  EndpointMode mode = EndpointMode::both_singular);

/// Phase rate descriptor for integrands carrying exp(i * rate * t^power).
struct OscillationHint {
  double rate = 0.0;
  double power = 1.0;
};

/// Integral over [0, inf). The endpoint segment uses t = t0 s^2; the rest is
/// cut either into doubling panels or, with a hint, into panels between
/// successive phase increments of pi. Panel sums of algebraically decaying
/// oscillatory tails are accelerated by iterated averaging.
QuadratureResult integrate_semi_infinite(const Integrand& f, const ToleranceSpec& tol,
                                         std::optional<OscillationHint> hint = std::nullopt);

inline constexpr double kMaxTruncation = 1e4;

/// e^{i alpha z} * int_0^inf r^{z-1} h(r e^{i alpha}) dr, i.e. the Mellin-type
/// integral int_0^inf t^{z-1} h(t) dt taken along the ray arg t = alpha.
/// The caller guarantees h is analytic and decaying in the sector between the
/// real axis and the ray, so the value equals the real-axis integral.
QuadratureResult mellin_along_ray(Complex z, const std::function<Complex(Complex)>& h, double alpha,
                                  const ToleranceSpec& tol);

struct RayChoice {
  double alpha = 0.0;
  double l1_norm = 0.0;  // estimate of e^{-alpha Im z} int_0^inf r^{Re z-1} |h(r e^{i alpha})| dr
};

/// The candidate angle with the smallest L1 norm of the ray integrand, which
/// bounds the cancellation in mellin_along_ray. The norm is summed on a
/// logarithmic grid r in [1e-20, 1e4]; candidates whose integrand is not
/// negligible at r = 1e4 or overflows are rejected. Empty when none qualify.
std::optional<RayChoice> select_mellin_ray(Complex z, const std::function<Complex(Complex)>& h,
                                           std::span<const double> candidates);

// ---------------------------------------------------------------------------
// Series acceleration
// ---------------------------------------------------------------------------

/// Sum_{k>=0} (-1)^k a_k by the Cohen-Rodriguez Villegas-Zagier weights,
/// using n terms (relative error ~ 5.83^-n for totally monotone a_k).
Complex alternating_sum(const std::function<Complex(std::size_t)>& term, std::size_t n);

struct AcceleratedSum {
  Complex value{};
  double error_estimate = 0.0;
};

/// Euler transform of a sequence of partial sums by repeated pairwise
/// averaging; the error estimate is the spread of the last two levels.
AcceleratedSum iterated_average(std::span<const Complex> partial_sums);

// ---------------------------------------------------------------------------
// Convergence orders
// ---------------------------------------------------------------------------

struct ResidualReport {
  std::vector<double> spacings;
  std::vector<double> residual_norms;
  double estimated_order = 0.0;
  bool exact_match = false;  // every residual vanished identically
  double noise_floor = 0.0;  // residual level attributable to evaluator noise
};

/// Least-squares slope of log(residual) against log(spacing).
/// DegenerateLadder for fewer than three entries, non-decreasing spacings, or
/// a mix of zero and non-zero residuals.
ResidualReport estimate_order(std::span<const std::pair<double, double>> ladder);

// ---------------------------------------------------------------------------
// Deterministic fan-out
// ---------------------------------------------------------------------------

/// Runs body(i) for i in [0, n) on up to `jobs` threads (0 = hardware
/// concurrency). Exceptions are rethrown in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned jobs = 0);

}  // namespace zetalab

#endif  // ZETALAB_NUMERICS_HPP
