#ifndef ZETALAB_LERCH_HPP
#define ZETALAB_LERCH_HPP

#include <utility>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// Arguments of Phi(xi, z, eta) = sum_{n>=0} (eta + n)^{-z} xi^n.
/// make() enforces |xi| <= 1, xi != 1 and eta away from 0, -1, -2, ...
struct LerchArgs {
  Complex xi;
  Complex z;
  Complex eta;

  static LerchArgs make(Complex xi, Complex z, Complex eta);
};

/// Direct summation with the tail bound |xi|^N |eta+N|^{-Re z} / (1-|xi|) <= abs_tol.
/// For |xi| > 0.999 the sum is accelerated (CVZ weights on the negative real
/// axis, iterated averaging of partial sums elsewhere); SlowConvergence when
/// the accelerated estimate misses the tolerance.
Complex lerch_series(const LerchArgs& args, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// Gamma(z)^{-1} int_0^inf t^{z-1} e^{-eta t} / (1 - xi e^{-t}) dt, Re eta > 0, Re z > 0.
Complex lerch_integral(const LerchArgs& args, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// Residual |xi d^2Phi/dxi deta + eta dPhi/deta + z Phi| from central differences
/// at spacings {step, step/2, step/4}. MarginError unless |xi| + 4 step < 1,
/// |xi| >= 4 step and Re eta > 4 step.
ResidualReport lerch_pde_residual(const LerchArgs& args, double step = 0.01);

/// The same ladder for Phi^(xi, eta) = xi^theta Phi(b xi^k, z, (eta + theta)/k),
/// which solves the same equation for any k != 0, b != 0 and theta.
/// DomainError when a stencil point leaves the Lerch domain or straddles the
/// branch cut of a non-integer power.
ResidualReport lerch_symmetry_check(const LerchArgs& args, double k, Complex b, Complex theta, double step = 0.01);

/// Relative residuals of
///   Phi(xi) + Phi(-xi) = 2^{1-z} Phi(xi^2, z, eta/2),
///   Phi(xi) - Phi(-xi) = 2^{1-z} xi Phi(xi^2, z, (eta+1)/2),
/// both normalised by |Phi(xi)| + |Phi(-xi)|.
std::pair<double, double> duplication_identity_residuals(const LerchArgs& args);

}  // namespace zetalab

#endif  // ZETALAB_LERCH_HPP
