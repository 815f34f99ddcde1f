#ifndef ZETALAB_DETAIL_CONTOUR_HPP
#define ZETALAB_DETAIL_CONTOUR_HPP

#include <algorithm>
#include <cmath>

#include "zetalab/numerics.hpp"

namespace zetalab::detail {

// 1 / (1 + e^w) without overflow for large Re w.
inline Complex fermi_factor(Complex w) {
  if (w.real() > 0.0) {
    const Complex e = std::exp(-w);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(w));
}

// Ray angle for int_0^inf t^{z-1} h(t) dt when h is analytic in the open right
// half-plane. Along arg t = alpha the factor |t^{i tau}| = e^{-alpha tau}
// tracks the e^{-pi |tau| / 2} size of the result, so the integrand no longer
// cancels down to it. The gap pi/2 - alpha shrinks as |tau| grows, keeping
// e^{(pi/2 - alpha)|tau|} near e^{2.5}.
inline double cancellation_angle(double tau, double max_angle = kPi / 2) {
  if (std::abs(tau) < 1.0) return 0.0;
  const double gap = std::clamp(2.5 / std::abs(tau), 0.1, 0.6);
  const double alpha = std::min(kPi / 2 - gap, max_angle);
  return tau > 0 ? alpha : -alpha;
}

}  // namespace zetalab::detail

#endif
