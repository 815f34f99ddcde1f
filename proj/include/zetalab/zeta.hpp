#ifndef ZETALAB_ZETA_HPP
#define ZETALAB_ZETA_HPP

#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

/// A spectral parameter z and its eigenvalue lambda, tied by z = 1/2 + i lambda.
/// The same pairing serves theta and lambda_1 of the second solution family.
class SpectralParam {
 public:
  static SpectralParam from_z(Complex z) { return SpectralParam(z, -kI * (z - 0.5)); }
  static SpectralParam from_lambda(Complex lambda) { return SpectralParam(0.5 + kI * lambda, lambda); }

  Complex z() const noexcept { return z_; }
  Complex lambda() const noexcept { return lambda_; }

 private:
  SpectralParam(Complex z, Complex lambda) : z_(z), lambda_(lambda) {}
  Complex z_;
  Complex lambda_;
};

struct ZetaZero {
  int index = 0;          // 1-based count of zeros with ordinate in (0, t]
  double t = 0.0;         // ordinate on the critical line
  double residual = 0.0;  // |zeta(1/2 + i t)|
};

inline constexpr double kZeroAcceptance = 1e-9;
inline constexpr double kPrefactorGuard = 1e-8;

/// Riemann zeta on Re z > 0, z != 1, from the alternating (eta) series
/// zeta = eta / (1 - 2^{1-z}). Near the zeros of 1 - 2^{1-z} on Re z = 1
/// an Euler-Maclaurin sum is used instead.
Complex zeta(Complex z);

/// Euler-Maclaurin evaluation, valid for any z != 1.
Complex zeta_euler_maclaurin(Complex z);

/// |(1 - 2^{1-z}) Gamma(z)|, the natural magnitude of the Fermi-Dirac integral.
double zzfc_scale(Complex z);

/// int_0^inf t^{z-1} / (1 + e^t) dt for Re z > 0. rel_tol is taken relative
/// to zzfc_scale(z), so the integral stays resolvable where it vanishes.
QuadratureResult fermi_dirac_integral(Complex z, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// The same integral restricted to the critical strip 0 < Re z < 1
/// (DomainError outside); it vanishes exactly at nontrivial zeros.
QuadratureResult zzfc_integral(Complex z, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// zeta(z) = [(1 - 2^{1-z}) Gamma(z)]^{-1} int_0^inf t^{z-1}/(1+e^t) dt.
/// PoleError at z = 1, PrefactorSingular when |1 - 2^{1-z}| <= 1e-8.
Complex zeta_via_integral(Complex z, const ToleranceSpec& tol = ToleranceSpec::smooth());

/// |LHS - RHS| / (|LHS| + |RHS| + 1e-300) of
/// 2^{1-z} Gamma(z) zeta(z) cos(pi z / 2) = pi^z zeta(1 - z), for 0 < Re z < 1.
double functional_equation_residual(Complex z);

/// Three-term asymptotic of the Riemann-Siegel phase.
double riemann_siegel_theta(double t);

/// Re[e^{i theta(t)} zeta(1/2 + i t)], real-valued up to the phase asymptotic.
double hardy_z(double t);

/// All zeros with ordinate in [t_min, t_max], located by a sign-change scan of
/// hardy_z from t = 5 and refined by bisection. WindowTooWide for t_max > 100.
std::vector<ZetaZero> find_zeros(double t_min, double t_max, const ToleranceSpec& tol = ToleranceSpec::smooth(),
                                 double scan_step = 0.05);

}  // namespace zetalab

#endif  // ZETALAB_ZETA_HPP
