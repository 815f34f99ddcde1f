#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using zetalab::testing::rel_err;
using zetalab::testing::throws_kind;

namespace {

// Independent oracle: Euler-Maclaurin on the defining series with N = 50 and
// corrections through B_8, real s > 1 only.
double em_zeta_oracle(double s) {
  const int n = 50;
  double sum = 0.0;
  for (int k = 1; k < n; ++k) sum += std::pow(k, -s);
  const double N = n;
  sum += std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s);
  sum += (1.0 / 12.0) * s * std::pow(N, -s - 1);
  sum -= (1.0 / 720.0) * s * (s + 1) * (s + 2) * std::pow(N, -s - 3);
  sum += (1.0 / 30240.0) * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * std::pow(N, -s - 5);
  sum -= (1.0 / 1209600.0) * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * (s + 5) * (s + 6) * std::pow(N, -s - 7);
  return sum;
}

constexpr double kFirstZero = 14.134725141734693790;

}  // namespace

TEST_CASE("spectral parameter pairing") {
  const auto p = SpectralParam::from_z({0.5, 14.0});
  CHECK(std::abs(p.lambda() - Complex(14.0, 0.0)) < 1e-15);
  const auto q = SpectralParam::from_lambda({3.0, 0.25});
  CHECK(std::abs(q.z() - Complex(0.25, 3.0)) < 1e-15);
  CHECK(std::abs(SpectralParam::from_z(q.z()).lambda() - q.lambda()) < 1e-15);
}

TEST_CASE("zeta at even integers matches Euler-Maclaurin") {
  CHECK(std::abs(em_zeta_oracle(2.0) - kPi * kPi / 6) < 1e-13);
  CHECK(rel_err(zeta(2.0), em_zeta_oracle(2.0)) < 1e-10);
  CHECK(rel_err(zeta(4.0), em_zeta_oracle(4.0)) < 1e-10);
  CHECK(rel_err(zeta(4.0), std::pow(kPi, 4) / 90) < 1e-13);
}

TEST_CASE("zeta reference values in the strip") {
  CHECK(rel_err(zeta(0.5), -1.4603545088095868129) < 1e-12);
  CHECK(rel_err(zeta({0.5, 2.0}), {0.4405456503408294404864798, -0.3116463384357397251162166}) < 1e-11);
  CHECK(rel_err(zeta({0.5, 40.0}), {0.7930449525619286719648926, -1.041274614651065020051891}) < 1e-11);
  CHECK(rel_err(zeta({0.7, -55.0}), {2.196813687878185367052021, 0.6778822693543125218245831}) < 1e-10);
  // Prefactor zero 1 - 2^{1-z} = 0 at z = 1 + 2 pi i / ln 2: Euler-Maclaurin route.
  const Complex z_pre{1.0, 9.064720283654387619};
  CHECK(rel_err(zeta(z_pre), {1.346579542836317070671957, 0.1098831367962694768895681}) < 1e-11);
  CHECK(std::abs(zeta({0.5, kFirstZero})) <= 1e-8);
}

TEST_CASE("zeta domain and pole errors") {
  CHECK(throws_kind([] { zeta(1.0); }, ErrorKind::pole));
  CHECK(throws_kind([] { zeta(-0.5); }, ErrorKind::domain));
  CHECK(throws_kind([] { zeta({0.0, 3.0}); }, ErrorKind::domain));
  CHECK(throws_kind([] { zeta_via_integral(1.0); }, ErrorKind::pole));
  CHECK(throws_kind([] { zeta_via_integral({1.0, 2 * kPi / std::log(2.0)}); }, ErrorKind::prefactor_singular));
}

TEST_CASE("conjugate symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(0.2, 3.0), im(-60.0, 60.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z{re(rng), im(rng)};
    CHECK(std::abs(zeta(std::conj(z)) - std::conj(zeta(z))) <= 1e-12 * std::abs(zeta(z)));
  }
}

TEST_CASE("integral route") {
  CHECK(rel_err(zeta_via_integral(2.0), 1.6449340668482264) < 1e-8);
  // eta-series oracle: eta(1/2) / (1 - 2^{1/2}), eta summed by pairing consecutive terms.
  double eta = 0.0;
  for (int k = 1; k <= 400000; k += 2) eta += 1.0 / std::sqrt(k) - 1.0 / std::sqrt(k + 1.0);
  eta += 0.5 / std::sqrt(400001.0);  // half of the first omitted term
  const double oracle = eta / (1.0 - std::sqrt(2.0));
  CHECK(std::abs(zeta_via_integral(0.5) - oracle) < 1e-7);
  CHECK(std::abs(zeta(0.5) - oracle) < 1e-7);
}

TEST_CASE("zzfc integral") {
  const auto at_zero = zzfc_integral({0.5, kFirstZero});
  CHECK(std::abs(at_zero.value) <= 1e-6);
  CHECK(std::abs(at_zero.value) <= 1e-6 * zzfc_scale({0.5, kFirstZero}));

  // Independent factors: (1 - 2^{1/2}) Gamma(1/2) zeta(1/2)
  const double product = (1 - std::sqrt(2.0)) * std::sqrt(kPi) * -1.4603545088095868129;
  CHECK(std::abs(zzfc_integral(0.5).value - product) < 1e-9);
  CHECK(std::abs(product - 1.0721549299401913) < 1e-12);

  CHECK(std::abs(zzfc_integral({0.75, 5.0}).value) > 1e-3);
  CHECK(throws_kind([] { zzfc_integral(1.5); }, ErrorKind::domain));
  CHECK(throws_kind([] { zzfc_integral({0.0, 2.0}); }, ErrorKind::domain));
}

TEST_CASE("functional equation") {
  CHECK(functional_equation_residual({0.5, 3.0}) <= 1e-9);
  CHECK(functional_equation_residual({0.3, 7.0}) <= 1e-9);
  CHECK(functional_equation_residual(0.5) <= 1e-10);
  CHECK(throws_kind([] { functional_equation_residual(1.2); }, ErrorKind::domain));
}

TEST_CASE("zero finder") {
  const auto zeros = find_zeros(10, 30);
  REQUIRE(zeros.size() == 3);
  const double expected[] = {14.134725141734694, 21.022039638771555, 25.010857580145689};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(zeros[i].index == static_cast<int>(i) + 1);
    CHECK(std::abs(zeros[i].t - expected[i]) <= 1e-8);
    CHECK(zeros[i].residual <= kZeroAcceptance);
    // |zeta| has a local minimum there.
    CHECK(std::abs(zeta({0.5, zeros[i].t + 1e-6})) > zeros[i].residual);
    CHECK(std::abs(zeta({0.5, zeros[i].t - 1e-6})) > zeros[i].residual);
  }
  CHECK(find_zeros(2, 10).empty());
  const auto one = find_zeros(30, 35);
  REQUIRE(one.size() == 2);  // 30.4249 and 32.9351 both lie in [30, 35]
  CHECK(std::abs(one[0].t - 30.424876125859513) <= 1e-8);
  CHECK(one[0].index == 4);
  CHECK(throws_kind([] { find_zeros(10, 150); }, ErrorKind::window_too_wide));
  CHECK(throws_kind([] { find_zeros(20, 10); }, ErrorKind::precondition));
}

TEST_CASE("series and integral paths agree across the strip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.5, 0.9), im(-40.0, 40.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z{re(rng), im(rng)};
    CAPTURE(z);
    CHECK(rel_err(zeta_via_integral(z), zeta(z)) <= 1e-7);
  }
}

TEST_CASE("functional equation at random strip points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(0.05, 0.95), im(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const Complex z{re(rng), im(rng)};
    CAPTURE(z);
    CHECK(functional_equation_residual(z) <= 1e-8);
  }
}

TEST_CASE("zero ordinates are stable under a finer scan") {
  const auto coarse = find_zeros(10, 30);
  const auto fine = find_zeros(10, 30, ToleranceSpec::smooth(), 0.025);
  REQUIRE(coarse.size() == fine.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(coarse[i].index == fine[i].index);
    CHECK(std::abs(coarse[i].t - fine[i].t) <= 1e-8);
  }
}

TEST_CASE("zzfc vanishes at zeros and not elsewhere") {
  for (const auto& zero : find_zeros(10, 50)) {
    const Complex z{0.5, zero.t};
    CHECK(std::abs(zzfc_integral(z).value) <= 1e-6 * zzfc_scale(z));
  }
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(0.1, 0.9), im(0.0, 40.0);
  int tested = 0;
  while (tested < 20) {
    const Complex z{re(rng), im(rng)};
    if (std::abs(zeta(z)) < 0.05) continue;  // keep controls away from zeros
    ++tested;
    CAPTURE(z);
    CHECK(std::abs(zzfc_integral(z).value) >= 1e-3 * zzfc_scale(z));
  }
}
