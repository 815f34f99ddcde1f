#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "zetalab/lerch.hpp"
#include "zetalab/wavefunctions.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using zetalab::testing::rel_err;
using zetalab::testing::throws_kind;

namespace {

const BetaParam kHalf = BetaParam::make(0.5);

double first_zero() {
  static const double t = find_zeros(10.0, 20.0).front().t;
  return t;
}

Complex beta1_closed_form(double x, double y, Complex z) {
  return (1.0 - std::pow(2.0, 1.0 - z)) * zeta(z) * std::polar(1.0, x) * std::exp(-z * std::log1p(y));
}

Complex beta0_closed_form(double x, double y, Complex z) {
  return std::exp(-y) * lerch_series(LerchArgs::make(-std::exp(-y), z, Complex(1.0, -x)));
}

}  // namespace

TEST_CASE("pointwise integrands") {
  CHECK(eval_G0({0, 0}, 1.0, kHalf, EnvelopeSpec::fermi()).real() == doctest::Approx(0.2689414214).epsilon(1e-10));
  CHECK(std::abs(eval_G0({kPi, 0}, 1.0, kHalf, EnvelopeSpec::exponential()) + std::exp(-1.0)) < 1e-15);
  const double b = 0.3, t = 0.5, x = 2, y = 3;
  const Complex recomposed = std::polar(1.0, x * std::pow(t, 1 - b)) * std::exp(-std::pow(t + y * std::pow(t, b), 2));
  CHECK(rel_err(eval_G0({x, y}, t, BetaParam::make(b), EnvelopeSpec::gaussian()), recomposed) < 1e-14);
  CHECK(throws_kind([] { eval_G0({0, 0}, 0.0, kHalf, EnvelopeSpec::fermi()); }, ErrorKind::precondition));

  // u^{-1/2} (1 - u)^{-1/2} at u = 1/2 is 2, the only non-unit factor.
  CHECK(std::abs(eval_G1({0, 0}, 0.5, 0.5, kHalf, EnvelopeSpec::exponential()) - 2.0) < 1e-15);
  const Complex theta{0.5, 1.0};
  const double u = 0.5;
  const Complex g1 = std::pow(Complex(u), theta - 1.0) * std::pow(Complex(1 - u), -theta) * std::polar(1.0, -u * 2.0) *
                     std::exp(-2.0 * std::sqrt(u * (1 - u)));
  CHECK(rel_err(eval_G1({1, 2}, u, theta, kHalf, EnvelopeSpec::exponential()), g1) < 1e-14);
  const Complex edge = eval_G1({3, 0}, 0.2, theta, kHalf, EnvelopeSpec::fermi());
  CHECK(rel_err(edge, std::pow(Complex(0.2), theta - 1.0) * std::pow(Complex(0.8), -theta) * 0.5) < 1e-14);
}

TEST_CASE("sampled envelopes and weights") {
  const auto g = EnvelopeSpec::sampled({0, 1, 2}, {1, 0.5, 0});
  CHECK(g(0.5).real() == doctest::Approx(0.75));
  CHECK(g(3.0) == Complex{});
  CHECK(throws_kind([&] { g(Complex(0.5, 0.1)); }, ErrorKind::domain));
  CHECK(throws_kind([] { EnvelopeSpec::sampled({0, 1}, {1, 0.2}); }, ErrorKind::precondition));
  const auto w = ScaleWeightSpec::sampled({{0.5, 1.0}, {2.0, 3.0}});
  CHECK(w(1.0) == doctest::Approx(2.0));
  CHECK(w(4.0) == 0.0);
}

TEST_CASE("general family reduces to the Gamma integral and to f0") {
  const auto phi = eval_phi_general({0, 0}, 2.5, kHalf, EnvelopeSpec::exponential());
  CHECK(rel_err(phi.value, 0.75 * std::sqrt(kPi)) < 1e-10);
  for (Complex z : {Complex(0.7, 0.0), Complex(0.5, 6.0), Complex(1.5, -3.0)}) {
    const HalfPlanePoint p{0.8, 1.1};
    const Complex via_f0 = gamma_function(z) * eval_F0(p, z, kHalf).value;
    CHECK(rel_err(eval_phi_general(p, z, kHalf, EnvelopeSpec::fermi()).value, via_f0) < 1e-9);
  }
}

TEST_CASE("gaussian envelope against a real-axis quadrature") {
  const Complex z{0.5, 2.0};
  const ToleranceSpec tight{1e-12, 1e-16, 4'000'000};
  // e^{-(t + sqrt t)^2} is below 1e-40 beyond t = 9.
  const auto oracle = integrate_finite(
      [&](double t) {
        if (t == 0.0) return Complex{};
        const double xi = t + std::sqrt(t);
        return std::exp((z - 1.0) * std::log(t)) * std::polar(1.0, std::sqrt(t)) * std::exp(-xi * xi);
      },
      0.0, 9.0, tight, EndpointMode::left_singular);
  const auto got = eval_phi_general({1, 1}, z, kHalf, EnvelopeSpec::gaussian());
  CHECK(got.converged);
  CHECK(rel_err(got.value, oracle.value) < 1e-9);
}

TEST_CASE("beta = 1 closed form on 20 points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = -3.0 + 6.0 * unit(rng), y = 3.0 * unit(rng);
    const Complex z{0.3 + 2.0 * unit(rng), -20.0 + 40.0 * unit(rng)};
    const auto f = eval_F0({x, y}, z, BetaParam::make(1.0));
    REQUIRE(f.converged);
    worst = std::max(worst, rel_err(f.value, beta1_closed_form(x, y, z)));
  }
  CHECK(worst < 1e-6);
  CHECK(rel_err(eval_F0({0.4, 1.0}, 2.0, BetaParam::make(1.0)).value,
                0.5 * kPi * kPi / 6.0 * std::polar(1.0, 0.4) / 4.0) < 1e-9);
}

TEST_CASE("beta = 0 closed form on 20 points") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = -3.0 + 6.0 * unit(rng), y = 0.1 + 2.0 * unit(rng);
    const Complex z{0.3 + 2.0 * unit(rng), -10.0 + 20.0 * unit(rng)};
    const auto f = eval_F0({x, y}, z, BetaParam::make(0.0));
    REQUIRE(f.converged);
    worst = std::max(worst, rel_err(f.value, beta0_closed_form(x, y, z)));
  }
  CHECK(worst < 1e-6);
  CHECK(rel_err(eval_F0({1.0, 0.5}, 1.5, BetaParam::make(0.0)).value, beta0_closed_form(1.0, 0.5, 1.5)) < 1e-8);
}

TEST_CASE("F0 vanishes at the origin for the first three zeros") {
  for (const auto& zero : find_zeros(10.0, 26.0)) {
    for (double b : {0.3, 0.5, 0.7}) {
      CAPTURE(zero.t);
      CAPTURE(b);
      CHECK(std::abs(eval_F0({0, 0}, Complex(0.5, zero.t), BetaParam::make(b)).value) < 1e-6);
    }
  }
}

TEST_CASE("conjugate-symmetric evaluation matches direct rotation") {
  // At Im z = 0 both x and -x are integrated without the mirror map.
  const Complex z{0.8, 0.0};
  const auto a = eval_f0({1.3, 0.6}, z, BetaParam::make(0.3));
  const auto b = eval_f0({-1.3, 0.6}, z, BetaParam::make(0.3));
  CHECK(rel_err(std::conj(b.value), a.value) < 1e-12);
  const auto up = eval_f0({1.3, 0.6}, Complex(0.8, 2.0), BetaParam::make(0.3));
  const auto down = eval_f0({-1.3, 0.6}, Complex(0.8, -2.0), BetaParam::make(0.3));
  CHECK(rel_err(std::conj(down.value), up.value) < 1e-12);
}

TEST_CASE("far boosted points stay evaluable") {
  const Complex z{0.6, 3.0};
  for (double s : {10.0, 25.0}) {
    for (double direction : {1.0, -1.0}) {
      const auto f = eval_f0(boost({1.0, 1.0}, std::exp(direction * s)), z, BetaParam::make(0.4));
      CHECK(f.converged);
      CHECK(std::isfinite(std::abs(f.value)));
    }
  }
}

TEST_CASE("boosts") {
  const auto same = boost({2, 3}, 1.0);
  CHECK(same.x == 2.0);
  CHECK(same.y == 3.0);
  const auto p = boost({2, 3}, 2.0);
  CHECK(p.x == 1.0);
  CHECK(p.y == 6.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> k(0.1, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double a = k(rng), b = k(rng);
    const auto lhs = boost(boost({1.7, 0.4}, a), b);
    const auto rhs = boost({1.7, 0.4}, a * b);
    CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-14));
    CHECK(lhs.y == doctest::Approx(rhs.y).epsilon(1e-14));
    CHECK(lhs.x * lhs.y == doctest::Approx(1.7 * 0.4).epsilon(1e-14));
  }
  CHECK(throws_kind([] { boost({1, 1}, 0.0); }, ErrorKind::precondition));
}

TEST_CASE("phi1 boundary values") {
  const Complex half{0.5, 0.0};
  const Complex expected = kPi * 0.5 * kPi * kPi / 6.0;
  CHECK(rel_err(phi1_boundary_value(2.0, half, EnvelopeSpec::exponential()).value, expected) < 1e-6);
  const auto separable =
      eval_phi1({0, 0}, 2.0, half, kHalf, EnvelopeSpec::exponential(), ScaleMap{0.0}, Phi1Variant::interval);
  CHECK(rel_err(separable.value, expected) < 1e-9);

  const Complex zero{0.5, first_zero()};
  const Complex theta{0.4, 0.3};
  const double bound = std::abs(kPi / std::sin(kPi * theta));
  const Complex reference = phi1_boundary_value(zero, theta, EnvelopeSpec::exponential()).value;
  CHECK(std::abs(reference) <= 1e-5 * bound);
  const Complex at_two = phi1_boundary_value(2.0, theta, EnvelopeSpec::exponential()).value;
  for (double x : {-3.0, 0.0, 1.5, 4.0}) {
    const auto v = eval_phi1_lerch({x, 0.0}, 2.0, theta, kHalf);
    CHECK(std::abs(v.value - at_two) <= 1e-8 * std::abs(at_two));
    const auto nested = eval_phi1({x, 0.0}, zero, theta, kHalf, EnvelopeSpec::exponential(), ScaleMap{1.0},
                                  Phi1Variant::interval);
    CHECK(std::abs(nested.value) <= 1e-5 * bound);
  }
}

TEST_CASE("phi1 preconditions") {
  const auto g = EnvelopeSpec::exponential();
  CHECK(throws_kind([&] { eval_phi1({1, 0}, 2.0, 0.5, kHalf, g, ScaleMap{0.0}, Phi1Variant::halfline); },
                    ErrorKind::log_divergence));
  CHECK(throws_kind([&] { eval_phi1({1, 1}, 2.0, 1.2, kHalf, g, ScaleMap{0.0}, Phi1Variant::interval); },
                    ErrorKind::domain));
  CHECK(throws_kind([&] { eval_phi1({1, 1}, Complex(-0.5, 1), 0.5, kHalf, g, ScaleMap{0.0}, Phi1Variant::interval); },
                    ErrorKind::domain));
  const auto halfline = eval_phi1({0.5, 0.7}, Complex(0.6, 3), Complex(0.4, 0.2), kHalf, EnvelopeSpec::gaussian(),
                                  ScaleMap{0.0}, Phi1Variant::halfline);
  CHECK(halfline.converged);
}

TEST_CASE("Lerch-accelerated phi1 matches the nested quadrature") {
  const Complex z{0.6, 3.0}, theta{0.4, 0.2};
  for (const HalfPlanePoint p : {HalfPlanePoint{0.5, 0.7}, HalfPlanePoint{-1.2, 2.0}}) {
    const auto nested =
        eval_phi1(p, z, theta, kHalf, EnvelopeSpec::exponential(), ScaleMap{1.0}, Phi1Variant::interval);
    const auto fast = eval_phi1_lerch(p, z, theta, kHalf);
    CHECK(rel_err(nested.value, fast.value) < 1e-8);
  }
}

TEST_CASE("row rule reproduces the Lerch path") {
  const Phi1Params params{Complex(0.5, first_zero()), Complex(0.3, -1.0), kHalf};
  const ToleranceSpec reference_tol{1e-10, 1e-22, 4'000'000};
  for (double y : {0.05, 1.3, 7.9}) {
    const Phi1Row row(y, 8.0, params);
    for (double x : {-8.0, -2.5, 0.0, 3.3, 8.0}) {
      const auto ref = eval_phi1_lerch({x, y}, params.z, params.theta, params.beta, reference_tol);
      CHECK(rel_err(row(x), ref.value) < 1e-8);
    }
  }
}

TEST_CASE("scale-average kernel against real-axis quadrature") {
  const Complex z{0.6, 3.0};
  for (double c : {0.3, 2.0}) {
    const auto oracle = integrate_semi_infinite(
        [&](double s) {
          if (s == 0.0) return Complex{};
          return std::exp((z - 1.0) * std::log(s) - z * std::log(s + c)) * std::polar(1.0, s);
        },
        ToleranceSpec{1e-10, 1e-14, 4'000'000}, OscillationHint{1.0, 1.0});
    CHECK(rel_err(scale_average_kernel(1.0, c, z).value, oracle.value) < 1e-7);
    CHECK(rel_err(scale_average_kernel(4.0, c / 4.0, z).value, oracle.value) < 1e-7);
  }
  CHECK(throws_kind([] { scale_average_kernel(0.0, 1.0, 0.5); }, ErrorKind::precondition));
}

TEST_CASE("scale average vanishes with the Fermi-Dirac factor") {
  const ToleranceSpec tol{1e-7, 1e-14, 2'000'000};
  const auto at_zero = scale_average({1, 1}, Complex(0.5, first_zero()), BetaParam::make(0.4), ScaleWeightSpec::unit(), tol);
  REQUIRE(at_zero.factorized);
  CHECK(std::abs(at_zero.factorized->value) <= 1e-5 * at_zero.factor_scale);
  CHECK(at_zero.fermi_dirac == zzfc_integral(Complex(0.5, first_zero()), ToleranceSpec{1e-8, 1e-14, 2'000'000}).value);

  const auto control = scale_average({1, 1}, Complex(0.7, 5.0), BetaParam::make(0.4), ScaleWeightSpec::unit(), tol, false);
  CHECK(std::abs(control.factorized->value) > 1e-3 * control.factor_scale);

  const auto mid = scale_average({1, 1}, Complex(0.6, 3.0), BetaParam::make(0.4), ScaleWeightSpec::unit(), tol);
  REQUIRE(mid.direct);
  CHECK(rel_err(mid.direct->value, mid.factorized->value) < 1e-4);

  CHECK(throws_kind([&] { scale_average({1, 1}, Complex(0.6, 3.0), BetaParam::make(1.0), ScaleWeightSpec::unit(), tol); },
                    ErrorKind::precondition));
}

TEST_CASE("orthogonality scalar") {
  const ToleranceSpec tol{1e-7, 1e-14, 2'000'000};
  const auto G = EnvelopeSpec::gaussian();
  const auto at_zero = orthogonality_scalar(G, Complex(0.5, first_zero()), kHalf, 30.0, tol, false);
  CHECK(std::abs(at_zero.reduced.value) <= 1e-5 * at_zero.scale);
  const auto control = orthogonality_scalar(G, Complex(0.7, 5.0), kHalf, 30.0, tol, false);
  CHECK(std::abs(control.reduced.value) > 1e-3 * control.scale);
  const auto mid = orthogonality_scalar(G, Complex(0.6, 3.0), kHalf, 30.0, tol, true);
  REQUIRE(mid.direct);
  CHECK(rel_err(mid.direct->value, mid.reduced.value) < 0.05);
}

TEST_CASE("eigen orthogonality ladder") {
  const Phi1Params phi1{Complex(0.5, first_zero()), Complex(0.5, 0.3), kHalf};
  const F0Params f0{Complex(0.6, 3.0), kHalf};
  const auto result = eigen_orthogonality(phi1, f0, {1, 2, 3});
  REQUIRE(result.ladder.size() == 3);
  for (const auto& entry : result.ladder) CHECK(std::isfinite(std::abs(entry.value)));
  const Phi1Params same{Complex(0.5, first_zero()), Complex(0.5, 3.0), kHalf};
  CHECK(throws_kind([&] { eigen_orthogonality(same, {Complex(0.5, 3.0), kHalf}, {1, 2}); }, ErrorKind::precondition));
  CHECK(throws_kind([&] { eigen_orthogonality(phi1, f0, {2, 1}); }, ErrorKind::precondition));
}

TEST_CASE("derivative recurrence") {
  const std::vector<double> ladder{0.02, 0.01, 0.005};
  const auto corrected = derivative_recurrence_residual({1, 1}, Complex(0.5, 3.0), kHalf, ladder);
  CHECK(corrected.estimated_order == doctest::Approx(2.0).epsilon(0.1));
  const auto printed = derivative_recurrence_residual({1, 1}, Complex(0.5, 3.0), kHalf, ladder, RecurrenceForm::as_printed);
  CHECK(printed.residual_norms.back() > 1e-2);
  CHECK(std::abs(printed.estimated_order) < 0.5);

  const auto at_one = derivative_recurrence_residual({0.7, 1.0}, 2.0, BetaParam::make(1.0), {4e-4, 2e-4, 1e-4});
  CHECK(at_one.residual_norms.back() <= 1e-8);

  // At beta = 0 the shifted side is i z e^{-y} Phi(-e^{-y}, z + 1, 1 - i x).
  const double x = 1.0, y = 0.5;
  const Complex z{1.5, 0.0};
  const Complex lerch_side = kI * z * std::exp(-y) * lerch_series(LerchArgs::make(-std::exp(-y), z + 1.0, Complex(1.0, -x)));
  const Complex quad_side = kI * z * eval_F0({x, y}, z + 1.0, BetaParam::make(0.0)).value;
  CHECK(rel_err(quad_side, lerch_side) < 1e-8);
  const auto at_zero = derivative_recurrence_residual({x, y}, z, BetaParam::make(0.0), ladder);
  CHECK(at_zero.estimated_order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("decay probes") {
  for (DecayRay ray : {DecayRay::x_axis, DecayRay::y_axis, DecayRay::diagonal}) {
    CAPTURE(to_string(ray));
    const auto probe = decay_probe(0.75, kHalf, ray);
    CHECK(probe.samples.size() == 12);
    CHECK(probe.slope <= probe.bound_exponent + 0.15);
    CHECK(std::isfinite(probe.constant));
    CHECK(std::isfinite(probe.sup_modulus));
  }
  CHECK(decay_probe(0.75, kHalf, DecayRay::y_axis).bound_exponent == doctest::Approx(-1.5));
  CHECK(decay_probe(0.75, kHalf, DecayRay::diagonal).bound_exponent == doctest::Approx(-0.75));
  CHECK(throws_kind([] { decay_probe(0.75, BetaParam::make(1.0), DecayRay::x_axis); }, ErrorKind::precondition));
}
