#include "zetalab/lerch.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zetalab/detail/contour.hpp"

namespace zetalab {
namespace {

constexpr double kAccelerationRadius = 0.999;
constexpr std::size_t kMaxTerms = 5'000'000;

bool near_nonpositive_integer(Complex eta) {
  return eta.real() < 0.5 && std::abs(eta - std::round(eta.real())) <= 1e-10;
}

void check_args(const LerchArgs& a) {
  if (!is_finite(a.xi) || !is_finite(a.z) || !is_finite(a.eta))
    throw Error(ErrorKind::domain, "Lerch arguments must be finite");
  if (std::abs(a.xi) > 1.0 + 1e-15) throw Error(ErrorKind::domain, "Lerch function needs |xi| <= 1");
  if (std::abs(a.xi - 1.0) <= 1e-15) throw Error(ErrorKind::domain, "Lerch function excludes xi = 1");
  if (near_nonpositive_integer(a.eta)) throw Error(ErrorKind::domain, "eta is at a non-positive integer");
}

Complex power_term(Complex eta_n, Complex z) { return std::exp(-z * std::log(eta_n)); }

Complex direct_sum(const LerchArgs& a, const ToleranceSpec& tol) {
  const double r = std::abs(a.xi);
  const double growth = std::max(0.0, -a.z.real());
  Complex sum{};
  Complex xi_n{1.0, 0.0};
  for (std::size_t n = 0; n < kMaxTerms; ++n) {
    const Complex eta_n = a.eta + static_cast<double>(n);
    const Complex term = xi_n * power_term(eta_n, a.z);
    sum += term;
    xi_n *= a.xi;
    if (n < 2) continue;
    // Bound on sum_{m > n} |term_m| by a geometric majorant from term n+1 on.
    const Complex next = eta_n + 1.0;
    const double mod = std::abs(next);
    const double ratio = r * std::pow(1.0 + 1.0 / mod, growth);
    if (ratio >= 1.0) continue;
    const double phase = std::max(1.0, std::exp(a.z.imag() * std::arg(next)));
    const double tail = std::pow(r, static_cast<double>(n + 1)) * std::pow(mod, -a.z.real()) * phase / (1.0 - ratio);
    if (tail <= tol.abs_tol) return sum;
  }
  throw Error(ErrorKind::slow_convergence, "Lerch series did not reach its tail bound");
}

Complex alternating_branch(const LerchArgs& a, const ToleranceSpec& tol) {
  const double r = std::abs(a.xi);
  auto term = [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    return std::pow(r, kk) * power_term(a.eta + kk, a.z);
  };
  auto n = static_cast<std::size_t>(std::ceil((0.6822 * std::abs(a.z.imag()) + std::abs(a.eta.imag()) + 18.0) / 0.7656)) + 2;
  Complex prev = alternating_sum(term, n);
  for (int attempt = 0; attempt < 4 && n + 10 <= 400; ++attempt) {
    n += 10;
    const Complex next = alternating_sum(term, n);
    if (std::abs(next - prev) <= tol.target(std::abs(next))) return next;
    prev = next;
  }
  throw Error(ErrorKind::slow_convergence, "accelerated Lerch series on the unit circle did not settle");
}

AcceleratedSum averaged_partial_sums(const LerchArgs& a, std::size_t terms) {
  std::vector<Complex> partial;
  partial.reserve(terms);
  Complex sum{};
  Complex xi_n{1.0, 0.0};
  for (std::size_t n = 0; n < terms; ++n) {
    sum += xi_n * power_term(a.eta + static_cast<double>(n), a.z);
    xi_n *= a.xi;
    partial.push_back(sum);
  }
  const std::size_t window = 40;
  return iterated_average(std::span<const Complex>(partial).last(window));
}

Complex euler_branch(const LerchArgs& a, const ToleranceSpec& tol) {
  const AcceleratedSum coarse = averaged_partial_sums(a, 200);
  const AcceleratedSum fine = averaged_partial_sums(a, 400);
  const double target = tol.target(std::abs(fine.value));
  if (fine.error_estimate <= target && std::abs(fine.value - coarse.value) <= target) return fine.value;
  throw Error(ErrorKind::slow_convergence, "Lerch series near the unit circle did not converge after averaging");
}

// Tolerance for samples that feed finite differences: the truncation must sit
// well below the O(h^2) signal at the finest spacing.
ToleranceSpec sample_tol(const LerchArgs& a) {
  ToleranceSpec tol;
  tol.rel_tol = 1e-15;
  tol.abs_tol = 1e-17 * std::max(1e-300, std::abs(power_term(a.eta, a.z)));
  return tol;
}

Complex sample(Complex xi, Complex z, Complex eta) {
  const LerchArgs a = LerchArgs::make(xi, z, eta);
  return lerch_series(a, sample_tol(a));
}

// Ladder of |xi F_{xi eta} + eta F_eta + z F| for a function F of (xi, eta).
template <class F>
ResidualReport pde_ladder(Complex xi, Complex eta, Complex z, double step, F&& f) {
  std::vector<std::pair<double, double>> ladder;
  for (int level = 0; level < 3; ++level) {
    const double h = std::ldexp(step, -level);
    const Complex f_pp = f(xi + h, eta + h);
    const Complex f_pm = f(xi + h, eta - h);
    const Complex f_mp = f(xi - h, eta + h);
    const Complex f_mm = f(xi - h, eta - h);
    const Complex mixed = (f_pp - f_pm - f_mp + f_mm) / (4.0 * h * h);
    const Complex d_eta = (f(xi, eta + h) - f(xi, eta - h)) / (2.0 * h);
    const Complex residual = xi * mixed + eta * d_eta + z * f(xi, eta);
    ladder.emplace_back(h, std::abs(residual));
  }
  return estimate_order(ladder);
}

void check_margin(const LerchArgs& a, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::precondition, "step must be positive");
  const double m = 4.0 * step;
  const double r = std::abs(a.xi);
  if (r + m >= 1.0 || r < m || a.eta.real() <= m)
    throw Error(ErrorKind::margin, "finite-difference stencil leaves the Lerch domain");
}

bool is_integer(double v) { return v == std::round(v); }

}  // namespace

LerchArgs LerchArgs::make(Complex xi, Complex z, Complex eta) {
  LerchArgs a{xi, z, eta};
  check_args(a);
  return a;
}

Complex lerch_series(const LerchArgs& args, const ToleranceSpec& tol) {
  check_args(args);
  tol.validate();
  if (!(args.eta.real() > 0.0)) throw Error(ErrorKind::domain, "Lerch series is evaluated for Re eta > 0");
  if (args.xi == Complex{}) return require_finite(power_term(args.eta, args.z), "lerch_series");
  const double r = std::abs(args.xi);
  Complex value;
  if (r <= kAccelerationRadius) {
    value = direct_sum(args, tol);
  } else if (args.xi.real() < 0.0 && std::abs(args.xi.imag()) <= 1e-14) {
    value = alternating_branch(args, tol);
  } else {
    value = euler_branch(args, tol);
  }
  return require_finite(value, "lerch_series");
}

Complex lerch_integral(const LerchArgs& args, const ToleranceSpec& tol) {
  check_args(args);
  tol.validate();
  if (!(args.eta.real() > 0.0) || !(args.z.real() > 0.0))
    throw Error(ErrorKind::domain, "Lerch integral needs Re eta > 0 and Re z > 0");
  // The poles of 1/(1 - xi e^{-w}) have Re w = ln|xi| <= 0, so any ray in the
  // right half-plane along which e^{-eta w} decays is admissible. The ray puts
  // arg(eta e^{i alpha}) where the fermi case puts arg t.
  const double limit = kPi / 2 - 0.1;
  const double alpha = std::clamp(detail::cancellation_angle(args.z.imag()) - std::arg(args.eta), -limit, limit);
  const Complex gamma_z = gamma_function(args.z);
  ToleranceSpec local = tol;
  local.abs_tol = tol.abs_tol * std::abs(gamma_z);
  const Complex xi = args.xi;
  const Complex eta = args.eta;
  const QuadratureResult q = mellin_along_ray(
      args.z, [xi, eta](Complex w) { return std::exp(-eta * w) / (1.0 - xi * std::exp(-w)); }, alpha, local);
  if (!q.converged) throw Error(ErrorKind::budget_exceeded, "Lerch integral did not converge");
  return require_finite(q.value / gamma_z, "lerch_integral");
}

ResidualReport lerch_pde_residual(const LerchArgs& args, double step) {
  check_args(args);
  check_margin(args, step);
  const Complex z = args.z;
  return pde_ladder(args.xi, args.eta, z, step, [z](Complex xi, Complex eta) { return sample(xi, z, eta); });
}

ResidualReport lerch_symmetry_check(const LerchArgs& args, double k, Complex b, Complex theta, double step) {
  check_args(args);
  if (k == 0.0 || b == Complex{}) throw Error(ErrorKind::precondition, "symmetry needs k != 0 and b != 0");
  if (k == 1.0 && b == Complex{1.0, 0.0} && theta == Complex{}) return lerch_pde_residual(args, step);
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::precondition, "step must be positive");
  const double m = 4.0 * step;
  const bool cut = !is_integer(k) || theta.imag() != 0.0 || !is_integer(theta.real());
  if (cut && args.xi.real() < m && std::abs(args.xi.imag()) <= m)
    throw Error(ErrorKind::domain, "stencil straddles the branch cut of a fractional power of xi");
  if (std::abs(args.xi) < m) throw Error(ErrorKind::margin, "stencil reaches xi = 0");
  const Complex z = args.z;
  auto transformed = [=](Complex xi, Complex eta) {
    const Complex log_xi = std::log(xi);
    const Complex mapped = b * std::exp(k * log_xi);
    const Complex shifted = (eta + theta) / k;
    if (std::abs(mapped) >= 1.0 || !(shifted.real() > 0.0))
      throw Error(ErrorKind::domain, "transformed arguments leave the Lerch domain");
    return std::exp(theta * log_xi) * sample(mapped, z, shifted);
  };
  return pde_ladder(args.xi, args.eta, z, step, transformed);
}

std::pair<double, double> duplication_identity_residuals(const LerchArgs& args) {
  check_args(args);
  if (std::abs(args.xi + 1.0) <= 1e-15) throw Error(ErrorKind::domain, "duplication needs -xi != 1");
  if (!(args.eta.real() > 0.0)) throw Error(ErrorKind::domain, "duplication is checked for Re eta > 0");
  const Complex z = args.z;
  const ToleranceSpec tol = sample_tol(args);
  const Complex plus = lerch_series(args, tol);
  const Complex minus = lerch_series(LerchArgs::make(-args.xi, z, args.eta), tol);
  const Complex xi2 = args.xi * args.xi;
  const Complex factor = std::exp((1.0 - z) * std::log(2.0));
  const Complex even = factor * lerch_series(LerchArgs::make(xi2, z, 0.5 * args.eta), tol);
  const Complex odd = factor * args.xi * lerch_series(LerchArgs::make(xi2, z, 0.5 * (args.eta + 1.0)), tol);
  const double scale = std::abs(plus) + std::abs(minus) + 1e-300;
  return {std::abs(plus + minus - even) / scale, std::abs(plus - minus - odd) / scale};
}

}  // namespace zetalab
