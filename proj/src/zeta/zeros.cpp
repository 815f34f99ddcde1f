#include <cmath>
#include <string>

#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

constexpr double kScanStart = 5.0;
constexpr double kMaxOrdinate = 100.0;

double bisect(double lo, double hi, double f_lo) {
  // Refine to the resolution of the ordinate itself.
  for (int i = 0; i < 200 && hi - lo > 4e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = hardy_z(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double riemann_siegel_theta(double t) {
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t);
}

double hardy_z(double t) {
  return (std::polar(1.0, riemann_siegel_theta(t)) * zeta(Complex(0.5, t))).real();
}

std::vector<ZetaZero> find_zeros(double t_min, double t_max, const ToleranceSpec& tol, double scan_step) {
  tol.validate();
  if (!(t_min > 0.0 && t_min < t_max)) throw Error(ErrorKind::precondition, "need 0 < t_min < t_max");
  if (t_max > kMaxOrdinate)
    throw Error(ErrorKind::window_too_wide, "zero search is limited to ordinates <= 100");
  if (!(scan_step > 0.0 && scan_step <= 0.1)) throw Error(ErrorKind::precondition, "scan step must be in (0, 0.1]");

  std::vector<ZetaZero> zeros;
  if (t_max < kScanStart) return zeros;
  // The scan always starts at t = 5 so the index counts every zero below the window.
  const auto steps = static_cast<std::size_t>(std::ceil((t_max - kScanStart) / scan_step));
  int count = 0;
  double t_prev = kScanStart;
  double z_prev = hardy_z(t_prev);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = std::min(kScanStart + static_cast<double>(i) * scan_step, t_max);
    const double z_now = hardy_z(t);
    if ((z_prev < 0.0) != (z_now < 0.0)) {
      const double root = bisect(t_prev, t, z_prev);
      ++count;
      if (root >= t_min && root <= t_max) {
        const double residual = std::abs(zeta(Complex(0.5, root)));
        zeros.push_back({count, root, residual});
      }
    }
    t_prev = t;
    z_prev = z_now;
  }
  return zeros;
}

}  // namespace zetalab
