#include <array>
#include <cmath>

#include "zetalab/detail/contour.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

constexpr double kLog2 = 0.69314718055994530942;

void check_half_plane(Complex z) {
  if (!is_finite(z)) throw Error(ErrorKind::domain, "zeta argument is not finite");
  if (std::abs(z - 1.0) < 1e-13) throw Error(ErrorKind::pole, "zeta has a pole at z = 1");
  if (!(z.real() > 0.0)) throw Error(ErrorKind::domain, "zeta is evaluated on Re z > 0 only");
}

Complex eta_prefactor(Complex z) { return 1.0 - std::exp((1.0 - z) * kLog2); }

// Dirichlet eta by CVZ acceleration. The weights' error bound carries the
// total variation of the Mellin measure of (k+1)^{-z}, roughly e^{pi|t|/2}.
Complex dirichlet_eta(Complex z) {
  const double tau = std::abs(z.imag());
  const auto n = static_cast<std::size_t>(std::ceil((0.6822 * tau + 18.0) / 0.7656)) + 2;
  if (n > 400) throw Error(ErrorKind::domain, "|Im z| too large for the alternating series");
  return alternating_sum([&](std::size_t k) { return std::exp(-z * std::log(static_cast<double>(k + 1))); }, n);
}

}  // namespace

Complex zeta_euler_maclaurin(Complex z) {
  if (std::abs(z - 1.0) < 1e-13) throw Error(ErrorKind::pole, "zeta has a pole at z = 1");
  // B_{2k} / (2k)!
  static constexpr std::array<double, 12> kB = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0,
      -3617.0 / 510.0 / 20922789888000.0,
      43867.0 / 798.0 / 6402373705728000.0,
      -174611.0 / 330.0 / 2432902008176640000.0,
      854513.0 / 138.0 / 1.1240007277776077e21,
      -236364091.0 / 2730.0 / 6.204484017332394e23,
  };
  const double n_cut = std::ceil(20.0 + std::abs(z));
  Complex sum{};
  for (double n = 1.0; n < n_cut; n += 1.0) sum += std::exp(-z * std::log(n));
  const double ln_n = std::log(n_cut);
  const Complex n_pow = std::exp(-z * ln_n);  // N^{-z}
  sum += n_pow * n_cut / (z - 1.0) + 0.5 * n_pow;
  Complex rising = z;  // z (z+1) ... (z + 2k - 2)
  Complex power = n_pow / n_cut;  // N^{-z-1}
  for (std::size_t k = 0; k < kB.size(); ++k) {
    sum += kB[k] * rising * power;
    const double m = 2.0 * static_cast<double>(k);
    rising *= (z + m + 1.0) * (z + m + 2.0);
    power /= n_cut * n_cut;
  }
  return sum;
}

Complex zeta(Complex z) {
  check_half_plane(z);
  const Complex pre = eta_prefactor(z);
  if (std::abs(pre) < 0.05) return require_finite(zeta_euler_maclaurin(z), "zeta");
  return require_finite(dirichlet_eta(z) / pre, "zeta");
}

double zzfc_scale(Complex z) { return std::abs(eta_prefactor(z)) * std::exp(log_gamma(z).real()); }

QuadratureResult fermi_dirac_integral(Complex z, const ToleranceSpec& tol) {
  if (!is_finite(z) || !(z.real() > 0.0))
    throw Error(ErrorKind::domain, "the Fermi-Dirac integral needs Re z > 0");
  tol.validate();
  ToleranceSpec local = tol;
  local.abs_tol = std::min(tol.abs_tol, tol.rel_tol * zzfc_scale(z));
  const double alpha = detail::cancellation_angle(z.imag());
  return mellin_along_ray(z, [](Complex t) { return detail::fermi_factor(t); }, alpha, local);
}

QuadratureResult zzfc_integral(Complex z, const ToleranceSpec& tol) {
  if (!(z.real() > 0.0 && z.real() < 1.0))
    throw Error(ErrorKind::domain, "the zero condition integral is defined on 0 < Re z < 1");
  return fermi_dirac_integral(z, tol);
}

Complex zeta_via_integral(Complex z, const ToleranceSpec& tol) {
  check_half_plane(z);
  const Complex pre = eta_prefactor(z);
  if (std::abs(pre) <= kPrefactorGuard)
    throw Error(ErrorKind::prefactor_singular, "1 - 2^{1-z} vanishes; the integral route is singular here");
  const QuadratureResult q = fermi_dirac_integral(z, tol);
  return require_finite(q.value / (pre * gamma_function(z)), "zeta_via_integral");
}

double functional_equation_residual(Complex z) {
  if (!(z.real() > 0.0 && z.real() < 1.0))
    throw Error(ErrorKind::domain, "functional equation check needs 0 < Re z < 1");
  const Complex lhs =
      std::exp((1.0 - z) * kLog2 + log_gamma(z)) * zeta(z) * std::cos(0.5 * kPi * z);
  const Complex rhs = std::exp(z * std::log(kPi)) * zeta(1.0 - z);
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

}  // namespace zetalab
