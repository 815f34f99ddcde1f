#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "zetalab/wavefunctions.hpp"

namespace zetalab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kAngleSteps = 8;

// Admissible ray angles for exp(i x t^{1-beta}) g(t + y t^beta). The envelope
// bounds |arg t|; at beta = 0 the phase is linear in t and competes with the
// envelope's e^{-Re t}, which needs cos(alpha) + x sin(alpha) > 0.
std::vector<double> candidate_angles(double x, double beta, const EnvelopeSpec& g) {
  const double max_angle = g.max_sector_angle();
  std::vector<double> out;
  for (int j = -kAngleSteps; j <= kAngleSteps; ++j) {
    const double alpha = max_angle * j / kAngleSteps;
    if (beta == 0.0 && g.kind() != EnvelopeKind::gaussian && std::cos(alpha) + x * std::sin(alpha) < 0.1) continue;
    out.push_back(alpha);
    if (max_angle == 0.0) break;
  }
  return out;
}

// Where a term c t^p governs the integrand's decay, put its unit point
// t = c^{-1/p} at w = min(1, 1e4 * 60^{-1/p}) so the term reaches 60 by the
// truncation radius 1e4.
double placed_scale(double c, double p) {
  const double w_unit = std::min(1.0, kMaxTruncation * std::pow(60.0, -1.0 / p));
  return std::pow(c, -1.0 / p) / w_unit;
}

// t = lambda w, shrunk when y t^beta or |x| t^{1-beta} reaches 1 below t = 1.
// Only used for 0 < beta < 1; the end cases keep lambda = 1.
double natural_scale(HalfPlanePoint p, double b) {
  if (b <= 0.0 || b >= 1.0) return 1.0;
  double lambda = 1.0;
  if (p.y > 1.0) lambda = std::min(lambda, placed_scale(p.y, b));
  if (std::abs(p.x) > 1.0) lambda = std::min(lambda, placed_scale(std::abs(p.x), 1.0 - b));
  return lambda;
}

}  // namespace

QuadratureResult eval_phi_general(HalfPlanePoint p, Complex z, BetaParam beta, const EnvelopeSpec& g,
                                  const ToleranceSpec& tol) {
  tol.validate();
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "phi needs Re z > 0");
  if (p.y < 0.0) throw Error(ErrorKind::precondition, "points live in the half-plane y >= 0");
  if (z.imag() < 0.0) {
    QuadratureResult mirrored = eval_phi_general({-p.x, p.y}, std::conj(z), beta, g, tol);
    mirrored.value = std::conj(mirrored.value);
    return mirrored;
  }
  const double b = beta.value;
  // t = lambda w keeps the integrand's mass near w ~ 1 at far-out points.
  const double lambda = natural_scale(p, b);
  const Complex lambda_z = std::exp(z * std::log(lambda));
  const double x = p.x * std::pow(lambda, 1.0 - b), y = p.y * std::pow(lambda, b);
  auto h = [x, y, b, lambda, &g](Complex w) {
    const Complex log_w = std::log(w);
    const Complex phase = b == 1.0 ? Complex(0.0, x) : kI * x * std::exp((1.0 - b) * log_w);
    const Complex xi = b == 0.0 ? w + y : lambda * w + y * std::exp(b * log_w);
    return std::exp(phase) * g(xi);
  };
  const std::vector<double> candidates = candidate_angles(x, b, g);
  const auto choice = select_mellin_ray(z, h, candidates);
  if (!choice) throw Error(ErrorKind::slow_decay, "no integration ray along which the integrand decays by t = 1e4");
  ToleranceSpec local = tol;
  // Roundoff in the ray integral sits near eps times its L1 norm.
  local.abs_tol = std::max(tol.abs_tol / std::abs(lambda_z), 256.0 * kEps * choice->l1_norm);
  QuadratureResult out = mellin_along_ray(z, h, choice->alpha, local);
  out.value *= lambda_z;
  out.abs_error_estimate *= std::abs(lambda_z);
  return out;
}

QuadratureResult eval_f0(HalfPlanePoint p, Complex z, BetaParam beta, const ToleranceSpec& tol) {
  return eval_phi_general(p, z, beta, EnvelopeSpec::fermi(), tol);
}

QuadratureResult eval_F0(HalfPlanePoint p, Complex z, BetaParam beta, const ToleranceSpec& tol) {
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "F0 needs Re z > 0");
  const Complex gamma_z = gamma_function(z);
  ToleranceSpec scaled = tol;
  scaled.abs_tol = tol.abs_tol * std::abs(gamma_z);
  QuadratureResult out = eval_f0(p, z, beta, scaled);
  out.value /= gamma_z;
  out.abs_error_estimate /= std::abs(gamma_z);
  return out;
}

}  // namespace zetalab
