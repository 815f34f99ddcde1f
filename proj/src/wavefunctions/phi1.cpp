#include <algorithm>
#include <cmath>

#include "zetalab/detail/contour.hpp"
#include "zetalab/detail/gauss_legendre.hpp"
#include "zetalab/lerch.hpp"
#include "zetalab/wavefunctions.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

void check_phi1(Complex z, Complex theta) {
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "phi_1 needs Re z > 0");
  if (!is_finite(theta) || !(theta.real() > 0.0 && theta.real() < 1.0))
    throw Error(ErrorKind::domain, "phi_1 needs 0 < Re theta < 1");
}

// u^{theta-1} (1-u)^{-theta} from u and v = 1 - u.
Complex interval_weight(double u, double v, Complex theta) {
  return std::exp((theta - 1.0) * std::log(u) - theta * std::log(v));
}

QuadratureResult interval_inner(HalfPlanePoint p, Complex scale, Complex theta, double b, const EnvelopeSpec& g,
                                const ToleranceSpec& tol) {
  const double xy = p.x * p.y;
  return integrate_finite(
      [&](double u, double v) {
        const double c = std::pow(u, b) * std::pow(v, 1.0 - b);
        return interval_weight(u, v, theta) * std::polar(1.0, -u * xy) * g(scale * p.y * c);
      },
      0.0, 1.0, tol, EndpointMode::both_singular);
}

QuadratureResult halfline_inner(HalfPlanePoint p, Complex scale, Complex theta, double b, const EnvelopeSpec& g,
                                const ToleranceSpec& tol) {
  const double xy = p.x * p.y;
  return integrate_semi_infinite(
      [&](double u) {
        if (u == 0.0) return Complex{};
        const double c = std::pow(u, b) * std::pow(1.0 + u, 1.0 - b);
        const Complex w = std::exp((theta - 1.0) * std::log(u) - theta * std::log1p(u));
        return w * std::polar(1.0, u * xy) * g(scale * p.y * c);
      },
      tol);
}

QuadratureResult product(const QuadratureResult& a, const QuadratureResult& b) {
  QuadratureResult out;
  out.value = a.value * b.value;
  out.abs_error_estimate = std::abs(a.value) * b.abs_error_estimate + std::abs(b.value) * a.abs_error_estimate;
  out.evaluations = a.evaluations + b.evaluations;
  out.converged = a.converged && b.converged;
  return out;
}

// Phi(-1, z, 1 + a), which tends to the vanishing eta(z) at a zeta zero as
// a -> 0; the absolute target is set by the leading term's size.
Complex alternating_t_integral(Complex z, double a, const ToleranceSpec& tol) {
  ToleranceSpec series_tol = tol;
  series_tol.rel_tol = 0.1 * tol.rel_tol;
  series_tol.abs_tol = 0.1 * tol.rel_tol * std::exp(-z.real() * std::log1p(a));
  return lerch_series(LerchArgs::make(-1.0, z, 1.0 + a), series_tol);
}

}  // namespace

QuadratureResult eval_phi1(HalfPlanePoint p, Complex z, Complex theta, BetaParam beta, const EnvelopeSpec& g,
                           ScaleMap k, Phi1Variant variant, const ToleranceSpec& tol) {
  tol.validate();
  check_phi1(z, theta);
  if (p.y < 0.0) throw Error(ErrorKind::precondition, "points live in the half-plane y >= 0");
  if (variant == Phi1Variant::halfline && p.y == 0.0)
    throw Error(ErrorKind::log_divergence, "halfline phi_1 diverges logarithmically in u at y = 0");
  const double b = beta.value;
  ToleranceSpec inner_tol = tol;
  inner_tol.rel_tol = 0.1 * tol.rel_tol;
  inner_tol.abs_tol = 0.1 * tol.abs_tol;
  auto inner = [&](Complex scale) {
    return variant == Phi1Variant::interval ? interval_inner(p, scale, theta, b, g, inner_tol)
                                            : halfline_inner(p, scale, theta, b, g, inner_tol);
  };

  if (k.power == 0.0) return product(fermi_dirac_integral(z, tol), inner(1.0));

  // k(t) = t^power puts arg(xi) = power * alpha, which the envelope must tolerate.
  const double limit = std::min(kPi / 2 - 0.05, g.max_sector_angle() / std::abs(k.power));
  const double alpha = std::clamp(detail::cancellation_angle(z.imag()), -limit, limit);
  std::size_t inner_evaluations = 0;
  bool inner_converged = true;
  QuadratureResult out = mellin_along_ray(
      z,
      [&](Complex w) {
        const QuadratureResult r = inner(k(w));
        inner_evaluations += r.evaluations;
        inner_converged = inner_converged && r.converged;
        return detail::fermi_factor(w) * r.value;
      },
      alpha, tol);
  out.evaluations += inner_evaluations;
  out.converged = out.converged && inner_converged;
  return out;
}

QuadratureResult eval_phi1_lerch(HalfPlanePoint p, Complex z, Complex theta, BetaParam beta,
                                 const ToleranceSpec& tol) {
  tol.validate();
  check_phi1(z, theta);
  if (p.y < 0.0) throw Error(ErrorKind::precondition, "points live in the half-plane y >= 0");
  const double b = beta.value;
  const double xy = p.x * p.y;
  const Complex gamma_z = gamma_function(z);
  QuadratureResult out = integrate_finite(
      [&](double u, double v) {
        const double a = p.y * std::pow(u, b) * std::pow(v, 1.0 - b);
        const Complex t_integral = alternating_t_integral(z, a, tol);
        return interval_weight(u, v, theta) * std::polar(1.0, -u * xy) * t_integral;
      },
      0.0, 1.0, tol, EndpointMode::both_singular);
  out.value *= gamma_z;
  out.abs_error_estimate *= std::abs(gamma_z);
  return out;
}

// Each half of (0, 1) is mapped by u = s^2 or
// 1 - u = s^2; the first s-panel is graded geometrically toward s = 0 with a
// ratio that keeps s^{2 i Im theta} under 1.5 rad per sub-panel.
Phi1Row::Phi1Row(double y, double x_max, const Phi1Params& params, const ToleranceSpec& tol) : y_(y) {
  const Complex gamma_z = gamma_function(params.z);
  const double b = params.beta.value;
  const Complex theta = params.theta;
  const double s_half = std::sqrt(0.5);
  const auto panels = static_cast<std::size_t>(std::max(8.0, std::ceil(x_max * y / 1.5)));
  const double width = s_half / static_cast<double>(panels);
  const double ratio = std::max(0.5, std::exp(-0.75 / std::max(std::abs(theta.imag()), 1e-3)));
  for (int side = 0; side < 2; ++side) {
    // Endpoint behaviour s^{2p - 1} with p = Re theta (u -> 0) or 1 - Re theta (u -> 1).
    const double p = side == 0 ? theta.real() : 1.0 - theta.real();
    const double s_floor = std::exp(std::log(1e-13) / (2.0 * p));
    std::vector<std::pair<double, double>> bounds;
    for (double hi = width; hi > s_floor && bounds.size() < 20000; hi *= ratio) bounds.emplace_back(hi * ratio, hi);
    for (std::size_t k = 1; k < panels; ++k) bounds.emplace_back(width * k, width * (k + 1));
    for (const auto& [lo, hi] : bounds) {
      for (std::size_t i = 0; i < detail::kGaussLegendre8Nodes.size(); ++i) {
        const double sv = 0.5 * (lo + hi) + 0.5 * (hi - lo) * detail::kGaussLegendre8Nodes[i];
        const double w = 0.5 * (hi - lo) * detail::kGaussLegendre8Weights[i];
        const double s2 = sv * sv;
        const double u = side == 0 ? s2 : 1.0 - s2;
        const double v = side == 0 ? 1.0 - s2 : s2;
        const Complex jacobian = side == 0 ? 2.0 * std::exp((2.0 * theta - 1.0) * std::log(sv) - theta * std::log(v))
                                           : 2.0 * std::exp((theta - 1.0) * std::log(u) + (1.0 - 2.0 * theta) * std::log(sv));
        const double a = y * std::pow(u, b) * std::pow(v, 1.0 - b);
        const Complex t_integral = alternating_t_integral(params.z, a, tol);
        nodes_.push_back(u);
        coefficients_.push_back(gamma_z * w * jacobian * t_integral);
      }
    }
  }
}

Complex Phi1Row::operator()(double x) const {
  Complex sum{};
  for (std::size_t j = 0; j < nodes_.size(); ++j) sum += coefficients_[j] * std::polar(1.0, -nodes_[j] * x * y_);
  return sum;
}

QuadratureResult phi1_boundary_value(Complex z, Complex theta, const EnvelopeSpec& g, const ToleranceSpec& tol) {
  check_phi1(z, theta);
  const Complex factor = g(0.0) * kPi / std::sin(kPi * theta);
  QuadratureResult out = fermi_dirac_integral(z, tol);
  out.value *= factor;
  out.abs_error_estimate *= std::abs(factor);
  return out;
}

}  // namespace zetalab
