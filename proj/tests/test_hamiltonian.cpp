#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "zetalab/hamiltonian.hpp"

using namespace zetalab;
using zetalab::testing::throws_kind;

namespace {

const BetaParam kHalf = BetaParam::make(0.5);

std::vector<GridSpec> window_ladder(double x0, double x1, double y0, double y1, std::size_t n, std::size_t levels = 3) {
  return refinement_ladder(GridSpec::make(x0, x1, y0, y1, n, n), levels);
}

// The eigen-residual window used throughout: away from y = 0 and small |x|.
std::vector<GridSpec> eigen_window() { return window_ladder(0.5, 2.0, 0.5, 2.0, 9); }

NoisyFieldFunction f0_field(Complex z, BetaParam beta) {
  return [z, beta](HalfPlanePoint p) { return eval_f0(p, z, beta); };
}

Complex gauss_xy(double x, double y) { return x * y * std::exp(-x * x - y * y); }

void check_order(const ResidualReport& r) {
  CHECK(r.estimated_order >= 1.8);
  CHECK(r.estimated_order <= 2.3);
}

}  // namespace

TEST_CASE("grid construction") {
  CHECK(throws_kind([] { GridSpec::make(0, 1, 0, 1, 4, 9); }, ErrorKind::grid_too_small));
  CHECK(throws_kind([] { GridSpec::make(1, 0, 0, 1, 9, 9); }, ErrorKind::precondition));
  CHECK(throws_kind([] { GridSpec::make(0, 1, -0.1, 1, 9, 9); }, ErrorKind::precondition));
  const GridSpec g = GridSpec::make(-1, 1, 0, 2, 5, 9).refined();
  CHECK(g.nx == 9);
  CHECK(g.ny == 17);
  CHECK(g.x(2) == doctest::Approx(-0.5));
  CHECK(throws_kind([] { GridField::sample(GridSpec::make(0, 1, 0, 1, 5, 5), [](double, double) {
                           return Complex(NAN, 0.0);
                         }); },
                    ErrorKind::non_finite_sample));
}

TEST_CASE("stencils are exact on bilinear fields") {
  const GridSpec spec = GridSpec::make(-2.0, 3.0, 0.0, 4.0, 11, 9);
  const Complex a(0.3, -1.0), b(1.5, 0.2), c(-0.7, 0.4), d(2.0, 1.0);
  const GridField f = GridField::sample(spec, [&](double x, double y) { return a + b * x + c * y + d * x * y; });
  for (double beta : {0.0, 0.3, 1.0}) {
    const GridField hf = apply_H(f, BetaParam::make(beta));
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < spec.nx; ++i) {
      for (std::size_t j = 1; j + 1 < spec.ny; ++j) {
        const double x = spec.x(i), y = spec.y(j);
        const Complex want = d + kI * beta * y * (c + d * x) + kI * (1.0 - beta) * x * (b + d * y) +
                             0.5 * kI * (a + b * x + c * y + d * x * y);
        worst = std::max(worst, std::abs(hf.at(i, j) - want) / std::max(1.0, std::abs(want)));
      }
    }
    CHECK(worst <= 1e-12);
  }

  const GridField one = GridField::sample(spec, [](double, double) { return Complex(1.0, 0.0); });
  const GridField h_one = apply_H(one, BetaParam::make(0.3));
  CHECK(std::abs(h_one.at(5, 4) - Complex(0.0, 0.5)) <= 1e-15);
  CHECK(h_one.at(0, 4) == Complex{});

  const GridField xy = GridField::sample(spec, [](double x, double y) { return Complex(x * y, 0.0); });
  const GridField h_xy = apply_H(xy, BetaParam::make(0.7));
  const double x = spec.x(3), y = spec.y(6);
  CHECK(std::abs(h_xy.at(3, 6) - (1.0 + kI * x * y + 0.5 * kI * x * y)) <= 1e-12);
}

TEST_CASE("f0 eigen residual converges at second order") {
  for (double beta : {0.3, 0.5, 0.7}) {
    for (Complex z : {Complex(0.5, 3.0), Complex(0.75, -2.0)}) {
      CAPTURE(beta);
      CAPTURE(z);
      const ResidualReport r = eigen_residual(f0_field(z, BetaParam::make(beta)), z, BetaParam::make(beta),
                                              eigen_window(), 1);
      check_order(r);
      CHECK(r.noise_floor < 1e-3 * r.residual_norms.back());
    }
  }
}

TEST_CASE("gaussian-envelope family and mirrored solutions") {
  const Complex z(0.6, 1.5);
  const BetaParam beta = BetaParam::make(0.4);
  const EnvelopeSpec g = EnvelopeSpec::gaussian();
  check_order(eigen_residual(NoisyFieldFunction([&](HalfPlanePoint p) { return eval_phi_general(p, z, beta, g); }), z,
                             beta, eigen_window(), 1));

  // Swapping x and y maps H_beta onto H_{1-beta}.
  const BetaParam mirror = BetaParam::make(0.6);
  check_order(eigen_residual(NoisyFieldFunction([&](HalfPlanePoint p) { return eval_f0({p.y, p.x}, z, beta); }), z,
                             mirror, eigen_window(), 1));
  const ResidualReport wrong = eigen_residual(
      NoisyFieldFunction([&](HalfPlanePoint p) { return eval_f0({p.y, p.x}, z, beta); }), z, beta, eigen_window(), 1);
  CHECK(wrong.estimated_order < 0.5);
}

TEST_CASE("boosted f0 keeps its eigenvalue") {
  const Complex z(0.5, 3.0);
  for (double k : {0.5, 2.0}) {
    CAPTURE(k);
    const ResidualReport r = eigen_residual(
        NoisyFieldFunction([&](HalfPlanePoint p) { return eval_f0(boost(p, k), z, kHalf); }), z, kHalf, eigen_window(), 1);
    check_order(r);
  }
}

TEST_CASE("phi1 with theta = z is an eigenfunction") {
  const Complex theta(0.5, 2.0);
  const ResidualReport r = eigen_residual(
      NoisyFieldFunction([&](HalfPlanePoint p) { return eval_phi1_lerch(p, theta, theta, kHalf); }), theta, kHalf,
      window_ladder(0.5, 2.0, 0.5, 2.0, 5), 1);
  check_order(r);
}

TEST_CASE("noise floor and ladder preconditions") {
  const Complex z(0.5, 3.0);
  CHECK(throws_kind([&] { eigen_residual(f0_field(z, kHalf), z, kHalf, window_ladder(0.5, 2.0, 0.5, 2.0, 9, 2), 1); },
                    ErrorKind::degenerate_ladder));
  NoisyFieldFunction jittery = [&](HalfPlanePoint p) {
    QuadratureResult r = eval_f0(p, z, kHalf);
    const double noise = 1e-4 * std::sin(1e3 * p.x + 7e2 * p.y);
    r.value += noise;
    r.abs_error_estimate = 1e-4;
    return r;
  };
  CHECK(throws_kind([&] { eigen_residual(jittery, z, kHalf, eigen_window(), 1); },
                    ErrorKind::evaluator_noise_dominates));
}

TEST_CASE("peculiar solution") {
  CHECK(std::abs(peculiar_solution({0.8, 0.0}, Complex(0.3, 2.0)) - 0.5 * std::polar(1.0, -0.4)) <= 1e-15);
  CHECK(std::abs(peculiar_solution({0.0, 1.0}, Complex(0.5, 0.0)) - 0.3535533906) <= 1e-10);
  const double xi = 1.0 + std::sqrt(2.0);
  CHECK(std::abs(peculiar_solution({0.0, 1.0}, Complex(0.5, 0.0)) - (1.0 + std::sqrt(2.0)) / (4.0 + 2.0 * std::sqrt(2.0))) <=
        1e-15);
  CHECK(xi / (xi * xi + 1.0) == doctest::Approx(0.3535533906).epsilon(1e-10));

  for (Complex z : {Complex(0.5, 3.0), Complex(0.8, -1.0)}) {
    CAPTURE(z);
    const FieldFunction phi = [z](double x, double y) { return peculiar_solution({x, y}, z); };
    const ResidualReport r = eigen_residual(phi, z, kHalf, window_ladder(-2.0, 2.0, 0.0, 2.0, 9), 1);
    check_order(r);
    CHECK(r.noise_floor == 0.0);
  }
}

TEST_CASE("integrand identities") {
  const std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
  const EnvelopeFunction exponential = EnvelopeSpec::exponential();
  const EnvelopeFunction constant = [](Complex) { return Complex(1.0, 0.0); };

  IntegrandSample at_t1;
  at_t1.p = {0.7, 1.1};
  at_t1.s = 1.0;
  check_order(integrand_pde_residuals(kHalf, IntegrandKind::G0, at_t1, exponential, steps));
  check_order(integrand_pde_residuals(BetaParam::make(0.3), IntegrandKind::G0, at_t1, constant, steps));

  IntegrandSample at_u;
  at_u.p = {0.7, 1.1};
  at_u.s = 0.5;
  at_u.theta = Complex(0.5, 1.0);
  check_order(integrand_pde_residuals(kHalf, IntegrandKind::G1, at_u, exponential, steps));
  at_u.theta = Complex(0.5, 2.0);
  const ResidualReport off = integrand_pde_residuals(kHalf, IntegrandKind::G1, at_u, exponential, steps);
  check_order(off);

  IntegrandSample edge = at_t1;
  edge.p.y = 0.001;
  CHECK(throws_kind([&] { integrand_pde_residuals(kHalf, IntegrandKind::G0, edge, exponential, steps); },
                    ErrorKind::margin));
  IntegrandSample corner = at_u;
  corner.s = 0.995;
  CHECK(throws_kind([&] { integrand_pde_residuals(kHalf, IntegrandKind::G1, corner, exponential, steps); },
                    ErrorKind::margin));
}

TEST_CASE("flux identity") {
  const auto ladder = window_ladder(-2.0, 2.0, 0.0, 2.0, 17);
  const FieldFunction x_field = [](double x, double y) { return Complex(x, 0.0) * std::exp(-x * x - y * y); };
  const FieldFunction y_field = [](double x, double y) { return Complex(y, 0.0) * std::exp(-x * x - y * y); };
  const FieldFunction phase = [](double x, double y) { return std::polar(std::exp(-x * x - y * y), x - 2.0 * y); };

  for (double beta : {0.3, 0.5}) {
    CAPTURE(beta);
    check_order(flux_identity_residual(gauss_xy, gauss_xy, BetaParam::make(beta), ladder));
    check_order(flux_identity_residual(x_field, y_field, BetaParam::make(beta), ladder));
    check_order(flux_identity_residual(phase, y_field, BetaParam::make(beta), ladder));
  }

  const ResidualReport dropped = flux_identity_residual(phase, y_field, kHalf, ladder, ConstantTerm::dropped);
  CHECK(dropped.estimated_order < 0.2);
  CHECK(dropped.residual_norms.back() > 0.9 * dropped.residual_norms.front());

  const FieldFunction zero = [](double, double) { return Complex{}; };
  const ResidualReport none = flux_identity_residual(zero, zero, kHalf, ladder);
  CHECK(none.exact_match);
  CHECK(none.residual_norms.back() == 0.0);
}

TEST_CASE("hermiticity defect") {
  // Central differences commute with x and y only up to a two-point average,
  // leaving (hx^2 (1-beta) ||phi_x||^2 + hy^2 beta ||phi_y||^2) / 2 in modulus.
  // Both squared gradient norms are 3 pi / 64 for x y exp(-x^2 - y^2) on y >= 0.
  const double gradient = 3.0 * M_PI / 64.0;
  const BetaParam beta = BetaParam::make(0.3);
  std::vector<std::pair<double, double>> ladder;
  for (std::size_t scale : {1, 2, 4}) {
    const GridSpec spec = GridSpec::make(-6.0, 6.0, 0.0, 6.0, 50 * scale, 25 * scale);
    const GridField f = GridField::sample(spec, gauss_xy);
    const HermiticityDefect d = hermiticity_defect(f, f, beta);
    ladder.emplace_back(spec.hx(), std::abs(d.value));
    const double leading = 0.5 * gradient * ((1.0 - beta.value) * spec.hx() * spec.hx() + beta.value * spec.hy() * spec.hy());
    CAPTURE(scale);
    if (scale > 1) CHECK(std::abs(d.value) == doctest::Approx(leading).epsilon(0.03));
    CHECK(d.constant < 1.0);
  }
  const ResidualReport r = estimate_order(ladder);
  check_order(r);

  const GridSpec spec = GridSpec::make(-6.0, 6.0, 0.0, 6.0, 60, 30);
  const GridField bump = GridField::sample(spec, [](double x, double y) { return Complex(std::exp(-x * x - y * y), 0.0); });
  CHECK(throws_kind([&] { hermiticity_defect(bump, bump, beta); }, ErrorKind::boundary_violation));
  const GridField zero(spec);
  const GridField f = GridField::sample(spec, gauss_xy);
  CHECK(hermiticity_defect(zero, f, beta).value == Complex{});
}

TEST_CASE("beta = 1/2 transform chain") {
  const auto ladder = window_ladder(-2.0, 2.0, 0.0, 2.0, 9);
  const FieldFunction gaussian = [](double x, double y) { return Complex(std::exp(-(x * x + y * y) / 4.0), 0.0); };
  const TransformCheck g = beta_half_transform_check(gaussian, ladder);
  check_order(g.conjugation);
  check_order(g.light_cone);

  // f = 1: the conjugated operator reduces to multiplication by x y / 4, and
  // the only error left is the stencil acting on the phase.
  std::vector<std::pair<double, double>> constant_ladder;
  for (const GridSpec& spec : ladder) {
    const GridField twisted = GridField::sample(spec, [](double x, double y) { return std::polar(1.0, -0.5 * x * y); });
    const GridField h = apply_H(twisted, kHalf);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < spec.nx; ++i)
      for (std::size_t j = 1; j + 1 < spec.ny; ++j)
        worst = std::max(worst, std::abs(std::polar(1.0, 0.5 * spec.x(i) * spec.y(j)) * h.at(i, j) -
                                         0.25 * spec.x(i) * spec.y(j)));
    constant_ladder.emplace_back(spec.hx(), worst);
  }
  CHECK(estimate_order(constant_ladder).estimated_order >= 1.8);

  // u^2 - v^2 = x y: both forms give 1 + (x y)^2 / 4 with exact stencils.
  const FieldFunction xy = [](double x, double y) { return Complex(x * y, 0.0); };
  for (auto [x, y] : {std::pair{0.3, 1.2}, std::pair{-1.5, 0.4}, std::pair{2.0, 2.5}}) {
    const Complex want = 1.0 + x * x * y * y / 4.0;
    CHECK(std::abs(conjugated_operator(xy, x, y, 0.1) - want) <= 1e-12);
    CHECK(std::abs(anti_oscillator(xy, 0.5 * (x + y), 0.5 * (y - x), 0.1) - want) <= 1e-12);
  }
}
