#include <array>
#include <cfloat>
#include <cmath>

#include "zetalab/numerics.hpp"

namespace zetalab {
namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

Complex lanczos_log_gamma(Complex z) {
  const Complex w = z - 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (w + static_cast<double>(k));
  const Complex t = w + kLanczosG + 0.5;
  return kHalfLog2Pi + (w + 0.5) * std::log(t) - t + std::log(series);
}

// log sin(pi z) without overflow for large |Im z|; any branch is acceptable
// because the caller exponentiates.
Complex log_sin_pi(Complex z) {
  const Complex ipz = kI * kPi * z;
  if (z.imag() >= 0.0) return -ipz + std::log((std::exp(2.0 * ipz) - 1.0) / (2.0 * kI));
  return ipz + std::log((1.0 - std::exp(-2.0 * ipz)) / (2.0 * kI));
}

void check_pole(Complex z) {
  if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-13) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z.real() - nearest) < 1e-13)
      throw Error(ErrorKind::pole, "Gamma has a pole at non-positive integers");
  }
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!is_finite(z)) throw Error(ErrorKind::domain, "log_gamma argument is not finite");
  check_pole(z);
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

Complex gamma_function(Complex z) {
  const Complex lg = log_gamma(z);
  if (lg.real() > std::log(DBL_MAX)) throw Error(ErrorKind::overflow, "Gamma exceeds the double range");
  return require_finite(std::exp(lg), "gamma");
}

}  // namespace zetalab
