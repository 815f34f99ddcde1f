#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>

#include "zetalab/hamiltonian.hpp"
#include "zetalab/lerch.hpp"
#include "zetalab/wavefunctions.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Measured {
  double value = 0.0;
  double error_estimate = 0.0;
  Json details = Json::object();
};

// Runs each check, timing it and turning library errors into failed records.
class Checks {
 public:
  explicit Checks(const Context& ctx) : ctx_(ctx) {}

  void at_most(const std::string& name, double upper, const std::function<Measured()>& fn) {
    CheckRecord r;
    r.relation = Relation::at_most;
    r.upper = ctx_.settings.check_tol.value_or(upper);
    run(name, std::move(r), fn);
  }
  void at_least(const std::string& name, double lower, const std::function<Measured()>& fn) {
    CheckRecord r;
    r.relation = Relation::at_least;
    r.lower = lower;
    run(name, std::move(r), fn);
  }
  void within(const std::string& name, double lower, double upper, const std::function<Measured()>& fn) {
    CheckRecord r;
    r.relation = Relation::within;
    r.lower = lower;
    r.upper = upper;
    run(name, std::move(r), fn);
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  void run(const std::string& name, CheckRecord r, const std::function<Measured()>& fn) {
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      Measured m = fn();
      r.value = m.value;
      r.error_estimate = m.error_estimate;
      r.details = std::move(m.details);
    } catch (const Error& e) {
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
      r.budget_error = is_budget_error(e.kind());
    } catch (const std::exception& e) {
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.error = e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ctx_.on_check) ctx_.on_check(r);
    records_.push_back(std::move(r));
  }

  const Context& ctx_;
  std::vector<CheckRecord> records_;
};

// mt19937_64 output is fixed by the standard; the mapping to [0, 1) is done
// here so samples do not depend on the library's distributions.
class Sampler {
 public:
  explicit Sampler(long seed) : rng_(static_cast<std::uint64_t>(seed)) {}
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double in(double a, double b) { return a + (b - a) * unit(); }

 private:
  std::mt19937_64 rng_;
};

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

double first_zero_ordinate() {
  static const double t = find_zeros(10.0, 20.0).front().t;
  return t;
}

Complex zero_or_first(const Json& params, const std::string& name) {
  return has_param(params, name) ? complex_param(params, name) : Complex(0.5, first_zero_ordinate());
}

std::string tag(const std::string& key, double v) {
  std::ostringstream out;
  out << key << "=" << v;
  return out.str();
}

std::string tag(const std::string& key, Complex z) { return key + "=" + format_complex(z); }

Json report_json(const ResidualReport& r) {
  return Json{{"spacings", r.spacings},
              {"residuals", r.residual_norms},
              {"estimated_order", r.estimated_order},
              {"exact_match", r.exact_match},
              {"noise_floor", r.noise_floor}};
}

Json zero_json(const ZetaZero& z) { return Json{{"index", z.index}, {"t", z.t}, {"residual", z.residual}}; }

ParamSpec real(std::string name, Json def, std::string help, std::optional<double> lo = {}, std::optional<double> hi = {}) {
  return ParamSpec{std::move(name), ParamType::real, std::move(def), std::move(help), {}, lo, hi};
}
ParamSpec integer(std::string name, Json def, std::string help, std::optional<double> lo = {},
                  std::optional<double> hi = {}) {
  return ParamSpec{std::move(name), ParamType::integer, std::move(def), std::move(help), {}, lo, hi};
}
ParamSpec complex(std::string name, Json def, std::string help) {
  return ParamSpec{std::move(name), ParamType::complex, std::move(def), std::move(help), {}, {}, {}};
}
ParamSpec text(std::string name, Json def, std::string help, std::vector<std::string> choices) {
  return ParamSpec{std::move(name), ParamType::text, std::move(def), std::move(help), std::move(choices), {}, {}};
}
ParamSpec real_list(std::string name, Json def, std::string help, std::optional<double> lo = {},
                    std::optional<double> hi = {}) {
  return ParamSpec{std::move(name), ParamType::real_list, std::move(def), std::move(help), {}, lo, hi};
}
ParamSpec complex_list(std::string name, Json def, std::string help) {
  return ParamSpec{std::move(name), ParamType::complex_list, std::move(def), std::move(help), {}, {}, {}};
}
ParamSpec flag(std::string name, bool def, std::string help) {
  return ParamSpec{std::move(name), ParamType::flag, def, std::move(help), {}, {}, {}};
}

// Grid window parameters shared by the grid-based commands.
void add_window(Schema& s, double x0, double x1, double y0, double y1, long nodes) {
  s.push_back(real("x-min", x0, "window left edge"));
  s.push_back(real("x-max", x1, "window right edge"));
  s.push_back(real("y-min", y0, "window bottom edge", 0.0));
  s.push_back(real("y-max", y1, "window top edge", 0.0));
  s.push_back(integer("nodes", nodes, "nodes per axis on the coarsest grid", 5, 257));
  s.push_back(integer("levels", 3, "grids in the refinement ladder", 3, 6));
}

void validate_window(const Json& p) {
  if (!(real_param(p, "x-min") < real_param(p, "x-max"))) throw UsageError("--x-min must be below --x-max");
  if (!(real_param(p, "y-min") < real_param(p, "y-max"))) throw UsageError("--y-min must be below --y-max");
}

std::vector<GridSpec> window_ladder(const Json& p) {
  const auto n = static_cast<std::size_t>(integer_param(p, "nodes"));
  return refinement_ladder(GridSpec::make(real_param(p, "x-min"), real_param(p, "x-max"), real_param(p, "y-min"),
                                          real_param(p, "y-max"), n, n),
                           static_cast<std::size_t>(integer_param(p, "levels")));
}

EnvelopeSpec envelope_named(const std::string& name) {
  if (name == "exponential") return EnvelopeSpec::exponential();
  if (name == "gaussian") return EnvelopeSpec::gaussian();
  return EnvelopeSpec::fermi();
}

Json default_controls() {
  Json out = Json::array();
  for (double sigma : {0.2, 0.35, 0.65, 0.8})
    for (double t : {5.0, 12.0, 18.0, 23.0, 27.0}) out.push_back(complex_json({sigma, t}));
  return out;
}

// ---------------------------------------------------------------------------
// zeta

std::vector<CheckRecord> run_zeros(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const double t0 = real_param(p, "t-min"), t1 = real_param(p, "t-max"), step = real_param(p, "scan-step");
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  std::vector<ZetaZero> zeros;
  checks.at_most("zeros.residual", kZeroAcceptance, [&] {
    zeros = find_zeros(t0, t1, tol, step);
    Measured m;
    m.details["zeros"] = Json::array();
    for (const ZetaZero& z : zeros) {
      m.value = std::max(m.value, z.residual);
      m.details["zeros"].push_back(zero_json(z));
    }
    return m;
  });
  if (has_param(p, "expect-count")) {
    const auto expected = static_cast<double>(integer_param(p, "expect-count"));
    checks.within("zeros.count", expected, expected, [&] {
      Measured m;
      m.value = static_cast<double>(zeros.size());
      return m;
    });
  }
  checks.at_most("zeros.stability", 1e-8, [&] {
    const std::vector<ZetaZero> fine = find_zeros(t0, t1, tol, 0.5 * step);
    Measured m;
    m.details["fine_scan_step"] = 0.5 * step;
    m.details["fine_zeros"] = Json::array();
    for (const ZetaZero& z : fine) m.details["fine_zeros"].push_back(zero_json(z));
    if (fine.size() != zeros.size()) {
      m.value = kInf;
      return m;
    }
    for (std::size_t k = 0; k < fine.size(); ++k) m.value = std::max(m.value, std::abs(fine[k].t - zeros[k].t));
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_functional_eq(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  checks.at_most("functional-eq.residual", 1e-8, [&] {
    Sampler rng(integer_param(p, "seed"));
    const double im_max = real_param(p, "im-max");
    Measured m;
    Complex worst{};
    for (long k = 0; k < integer_param(p, "samples"); ++k) {
      const Complex z{rng.in(0.05, 0.95), rng.in(-im_max, im_max)};
      const double r = functional_equation_residual(z);
      if (r >= m.value) {
        m.value = r;
        worst = z;
      }
    }
    m.details["worst_z"] = complex_json(worst);
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_zzfc(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  checks.at_most("zeta.even-values", 1e-10, [&] {
    Measured m;
    for (double s : {2.0, 4.0}) {
      const Complex series = zeta(s), oracle = zeta_euler_maclaurin(s);
      const double err = rel_err(series, oracle);
      m.value = std::max(m.value, err);
      m.details[tag("s", s)] = Json{{"series", complex_json(series)}, {"euler_maclaurin", complex_json(oracle)}};
    }
    m.details["closed_form_rel_err"] = Json{{"zeta(2)", rel_err(zeta(2.0), kPi * kPi / 6.0)},
                                            {"zeta(4)", rel_err(zeta(4.0), std::pow(kPi, 4) / 90.0)}};
    return m;
  });
  checks.at_most("zeta.series-vs-integral", 1e-7, [&] {
    Sampler rng(integer_param(p, "seed"));
    Measured m;
    Complex worst{};
    for (long k = 0; k < integer_param(p, "strip-samples"); ++k) {
      const Complex z{rng.in(0.05, 0.95), rng.in(-30.0, 30.0)};
      const double err = rel_err(zeta_via_integral(z, tol), zeta(z));
      if (err >= m.value) {
        m.value = err;
        worst = z;
      }
    }
    m.details["worst_z"] = complex_json(worst);
    return m;
  });
  checks.at_most("zzfc.at-zeros", 1e-6, [&] {
    Measured m;
    m.details["zeros"] = Json::array();
    const auto zeros = find_zeros(real_param(p, "t-min"), real_param(p, "t-max"), tol);
    if (zeros.empty()) throw Error(ErrorKind::precondition, "no zeros in the window");
    for (const ZetaZero& zero : zeros) {
      const Complex z{0.5, zero.t};
      const QuadratureResult r = zzfc_integral(z, tol);
      const double ratio = std::abs(r.value) / zzfc_scale(z);
      m.value = std::max(m.value, ratio);
      m.error_estimate = std::max(m.error_estimate, r.abs_error_estimate / zzfc_scale(z));
      m.details["zeros"].push_back(Json{{"t", zero.t}, {"integral", complex_json(r.value)}, {"ratio", ratio}});
    }
    return m;
  });
  checks.at_least("zzfc.controls", 1e-3, [&] {
    Measured m;
    m.value = kInf;
    m.details["controls"] = Json::array();
    for (Complex z : complex_list_param(p, "controls")) {
      const double ratio = std::abs(zzfc_integral(z, tol).value) / zzfc_scale(z);
      m.value = std::min(m.value, ratio);
      m.details["controls"].push_back(Json{{"z", complex_json(z)}, {"ratio", ratio}});
    }
    return m;
  });
  return checks.take();
}

// ---------------------------------------------------------------------------
// wavefunctions

Complex beta1_closed_form(double x, double y, Complex z) {
  return (1.0 - std::pow(2.0, 1.0 - z)) * zeta(z) * std::polar(1.0, x) * std::exp(-z * std::log1p(y));
}

Complex beta0_closed_form(double x, double y, Complex z) {
  return std::exp(-y) * lerch_series(LerchArgs::make(-std::exp(-y), z, Complex(1.0, -x)));
}

std::vector<CheckRecord> run_f0_eval(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  checks.at_most("f0-eval.error", 1.0, [&] {
    const HalfPlanePoint pt = HalfPlanePoint::make(real_param(p, "x"), real_param(p, "y"));
    const Complex z = complex_param(p, "z");
    const BetaParam beta = BetaParam::make(real_param(p, "beta"));
    const QuadratureResult r = eval_phi_general(pt, z, beta, envelope_named(text_param(p, "envelope")), tol);
    Measured m;
    m.value = r.abs_error_estimate / tol.target(std::abs(r.value));
    m.error_estimate = r.abs_error_estimate;
    m.details["value"] = complex_json(r.value);
    m.details["over_gamma"] = complex_json(r.value / gamma_function(z));
    m.details["evaluations"] = r.evaluations;
    m.details["converged"] = r.converged;
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_special_cases(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  auto one_point = [&](double beta, double x, double y, Complex z) {
    const QuadratureResult r = eval_F0({x, y}, z, BetaParam::make(beta), tol);
    const Complex closed = beta == 1.0 ? beta1_closed_form(x, y, z) : beta0_closed_form(x, y, z);
    return std::pair{rel_err(r.value, closed), r};
  };

  if (has_param(p, "beta")) {
    const double beta = real_param(p, "beta");
    const double x = real_param(p, "x"), y = real_param(p, "y");
    const Complex z = complex_param(p, "z");
    checks.at_most(beta == 1.0 ? "special.beta1" : "special.beta0", 1e-6, [&] {
      const auto [err, r] = one_point(beta, x, y, z);
      Measured m;
      m.value = err;
      m.error_estimate = r.abs_error_estimate;
      m.details["F0"] = complex_json(r.value);
      return m;
    });
    return checks.take();
  }

  const long samples = integer_param(p, "samples");
  for (double beta : {1.0, 0.0}) {
    checks.at_most(beta == 1.0 ? "special.beta1-samples" : "special.beta0-samples", 1e-6, [&] {
      Sampler rng(integer_param(p, "seed") + static_cast<long>(beta));
      Measured m;
      for (long k = 0; k < samples; ++k) {
        const double x = rng.in(-3.0, 3.0);
        const double y = beta == 1.0 ? rng.in(0.0, 3.0) : rng.in(0.1, 2.1);
        const Complex z{rng.in(0.3, 2.3), beta == 1.0 ? rng.in(-20.0, 20.0) : rng.in(-10.0, 10.0)};
        const auto [err, r] = one_point(beta, x, y, z);
        if (err >= m.value) m.details["worst"] = Json{{"x", x}, {"y", y}, {"z", complex_json(z)}};
        m.value = std::max(m.value, err);
        m.error_estimate = std::max(m.error_estimate, r.abs_error_estimate / std::abs(r.value));
      }
      return m;
    });
  }

  const Complex theta = complex_param(p, "theta");
  const std::vector<double> xs{-3.0, 0.0, 1.5, 4.0};
  checks.at_most("phi1-boundary.x-independence", 1e-8, [&] {
    Measured m;
    const Complex first = eval_phi1_lerch({xs.front(), 0.0}, 2.0, theta, BetaParam::make(0.5), tol).value;
    m.details["values"] = Json::array();
    for (double x : xs) {
      const Complex v = eval_phi1_lerch({x, 0.0}, 2.0, theta, BetaParam::make(0.5), tol).value;
      m.value = std::max(m.value, rel_err(v, first));
      m.details["values"].push_back(Json{{"x", x}, {"phi1", complex_json(v)}});
    }
    return m;
  });
  checks.at_most("phi1-boundary.at-zero", 1e-5, [&] {
    const Complex zero(0.5, first_zero_ordinate());
    const double bound = std::abs(kPi / std::sin(kPi * theta));
    Measured m;
    for (double x : xs) {
      const QuadratureResult r = eval_phi1({x, 0.0}, zero, theta, BetaParam::make(0.5), EnvelopeSpec::exponential(),
                                           ScaleMap{1.0}, Phi1Variant::interval, tol);
      m.value = std::max(m.value, std::abs(r.value) / bound);
      m.error_estimate = std::max(m.error_estimate, r.abs_error_estimate / bound);
    }
    m.details["z"] = complex_json(zero);
    return m;
  });
  checks.at_most("phi1-boundary.closed-form", 1e-6, [&] {
    const Complex half(0.5, 0.0);
    const Complex expected = fermi_dirac_integral(2.0, tol).value * kPi / std::sin(kPi * half);
    const QuadratureResult r = eval_phi1_lerch({0.7, 0.0}, 2.0, half, BetaParam::make(0.5), tol);
    Measured m;
    m.value = rel_err(r.value, expected);
    m.error_estimate = r.abs_error_estimate / std::abs(expected);
    m.details["phi1"] = complex_json(r.value);
    m.details["zzfc_times_pi_over_sin"] = complex_json(expected);
    return m;
  });
  return checks.take();
}

void validate_special_cases(const Json& p) {
  const bool any = has_param(p, "beta") || has_param(p, "z") || has_param(p, "x") || has_param(p, "y");
  if (!any) return;
  if (!(has_param(p, "beta") && has_param(p, "z") && has_param(p, "x") && has_param(p, "y")))
    throw UsageError("a single-point check needs --beta, --z, --x and --y together");
  const double beta = real_param(p, "beta");
  if (beta != 0.0 && beta != 1.0) throw UsageError("--beta must be 0 or 1 for the closed forms");
  if (real_param(p, "y") < 0.0) throw UsageError("--y must be non-negative");
  if (complex_param(p, "z").real() <= 0.0) throw UsageError("--z needs a positive real part");
}

std::vector<CheckRecord> run_lerch_suite(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  Sampler rng(integer_param(p, "seed"));
  auto random_args = [&](double min_modulus, double max_modulus) {
    const double r = std::sqrt(rng.in(min_modulus * min_modulus, max_modulus * max_modulus));
    const Complex xi = std::polar(r, rng.in(0.0, 2.0 * kPi));
    const Complex z{rng.in(0.5, 3.0), rng.in(-5.0, 5.0)};
    const Complex eta{rng.in(0.5, 3.0), rng.in(-2.0, 2.0)};
    return LerchArgs::make(xi, z, eta);
  };
  checks.at_most("lerch.series-vs-integral", 1e-8, [&] {
    Measured m;
    for (long k = 0; k < integer_param(p, "series-samples"); ++k) {
      const LerchArgs a = random_args(0.0, 0.9);
      m.value = std::max(m.value, rel_err(lerch_integral(a, tol), lerch_series(a, tol)));
    }
    return m;
  });
  checks.at_most("lerch.duplication", 1e-8, [&] {
    Measured m;
    for (long k = 0; k < integer_param(p, "identity-samples"); ++k) {
      const auto [even, odd] = duplication_identity_residuals(random_args(0.0, 0.9));
      m.value = std::max({m.value, even, odd});
    }
    return m;
  });
  for (long k = 0; k < integer_param(p, "pde-samples"); ++k) {
    const LerchArgs a = random_args(0.1, 0.8);
    checks.within("lerch.pde-order[" + std::to_string(k) + "]", 1.8, 2.3, [&] {
      const ResidualReport r = lerch_pde_residual(a, 0.01);
      Measured m;
      m.value = r.estimated_order;
      m.details = report_json(r);
      m.details["xi"] = complex_json(a.xi);
      m.details["z"] = complex_json(a.z);
      m.details["eta"] = complex_json(a.eta);
      return m;
    });
  }
  return checks.take();
}

std::vector<CheckRecord> run_scale_average(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance({1e-7, 1e-14, 2'000'000});
  const HalfPlanePoint pt = HalfPlanePoint::make(real_param(p, "x"), real_param(p, "y"));
  const BetaParam beta = BetaParam::make(real_param(p, "beta"));
  auto summary = [](const ScaleAverage& s) {
    Json j{{"kernel", complex_json(s.kernel)}, {"fermi_dirac", complex_json(s.fermi_dirac)}, {"factor_scale", s.factor_scale}};
    if (s.factorized) j["factorized"] = complex_json(s.factorized->value);
    if (s.direct) j["direct"] = complex_json(s.direct->value);
    return j;
  };
  checks.at_most("scale-average.direct-vs-factorized", 1e-4, [&] {
    const ScaleAverage s = scale_average(pt, complex_param(p, "z-compare"), beta, ScaleWeightSpec::unit(), tol);
    Measured m;
    m.value = rel_err(s.direct->value, s.factorized->value);
    m.error_estimate = s.direct->abs_error_estimate / std::abs(s.factorized->value);
    m.details = summary(s);
    return m;
  });
  checks.at_most("scale-average.at-zero", 1e-5, [&] {
    const Complex z = zero_or_first(p, "z-zero");
    const ScaleAverage s = scale_average(pt, z, beta, ScaleWeightSpec::unit(), tol, false);
    Measured m;
    m.value = std::abs(s.factorized->value) / s.factor_scale;
    m.error_estimate = s.factorized->abs_error_estimate / s.factor_scale;
    m.details = summary(s);
    m.details["z"] = complex_json(z);
    return m;
  });
  checks.at_least("scale-average.control", 1e-3, [&] {
    const ScaleAverage s = scale_average(pt, complex_param(p, "z-control"), beta, ScaleWeightSpec::unit(), tol, false);
    Measured m;
    m.value = std::abs(s.factorized->value) / s.factor_scale;
    m.details = summary(s);
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_orthogonality(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance({1e-7, 1e-14, 2'000'000});
  const EnvelopeSpec G = envelope_named(text_param(p, "envelope"));
  const BetaParam beta = BetaParam::make(real_param(p, "beta"));
  const double cut = real_param(p, "cut");
  auto summary = [](const OrthogonalityScalar& o) {
    Json j{{"reduced", complex_json(o.reduced.value)}, {"scale", o.scale}};
    if (o.direct) {
      j["direct"] = complex_json(o.direct->value);
      j["truncation_warning"] = o.truncation_warning;
    }
    return j;
  };
  checks.at_most("orthogonality.reduced-at-zero", 1e-5, [&] {
    const Complex z = zero_or_first(p, "z-zero");
    const OrthogonalityScalar o = orthogonality_scalar(G, z, beta, cut, tol, false);
    Measured m;
    m.value = std::abs(o.reduced.value) / o.scale;
    m.error_estimate = o.reduced.abs_error_estimate / o.scale;
    m.details = summary(o);
    m.details["z"] = complex_json(z);
    return m;
  });
  checks.at_least("orthogonality.reduced-control", 1e-3, [&] {
    const OrthogonalityScalar o = orthogonality_scalar(G, complex_param(p, "z-control"), beta, cut, tol, false);
    Measured m;
    m.value = std::abs(o.reduced.value) / o.scale;
    m.details = summary(o);
    return m;
  });
  if (flag_param(p, "direct")) {
    checks.at_most("orthogonality.direct-vs-reduced", 0.05, [&] {
      const OrthogonalityScalar o = orthogonality_scalar(G, complex_param(p, "z-compare"), beta, cut, tol, true);
      Measured m;
      m.value = rel_err(o.direct->value, o.reduced.value);
      m.error_estimate = o.direct->abs_error_estimate / std::abs(o.reduced.value);
      m.details = summary(o);
      return m;
    });
  }
  return checks.take();
}

std::vector<CheckRecord> run_decay_bounds(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const Complex z = complex_param(p, "z");
  const BetaParam beta = BetaParam::make(real_param(p, "beta"));
  const auto samples = static_cast<std::size_t>(integer_param(p, "samples"));
  for (DecayRay ray : {DecayRay::x_axis, DecayRay::y_axis, DecayRay::diagonal}) {
    checks.at_most("decay-bounds.slope-excess[" + std::string(to_string(ray)) + "]", 0.15, [&] {
      const DecayProbe probe = decay_probe(z, beta, ray, samples);
      Measured m;
      m.value = probe.slope - probe.bound_exponent;
      m.details = Json{{"slope", probe.slope},
                       {"bound_exponent", probe.bound_exponent},
                       {"constant", probe.constant},
                       {"sup_modulus", probe.sup_modulus},
                       {"samples", probe.samples}};
      return m;
    });
  }
  return checks.take();
}

// ---------------------------------------------------------------------------
// hamiltonian

Complex gauss_xy(double x, double y) { return x * y * std::exp(-x * x - y * y); }
Complex gauss_x(double x, double y) { return x * std::exp(-x * x - y * y); }
Complex gauss_y(double x, double y) { return y * std::exp(-x * x - y * y); }
Complex gauss_phase(double x, double y) { return std::polar(std::exp(-x * x - y * y), x - 2.0 * y); }

std::vector<CheckRecord> run_eigen_residual(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const ToleranceSpec tol = ctx.settings.tolerance(ToleranceSpec::smooth());
  const std::vector<GridSpec> ladder = window_ladder(p);
  const EnvelopeSpec g = envelope_named(text_param(p, "envelope"));
  const auto betas = real_list_param(p, "beta");
  const auto zs = complex_list_param(p, "z");
  auto check = [&](const std::string& name, Complex z, BetaParam beta, double k) {
    checks.at_least(name, 1.8, [&] {
      const NoisyFieldFunction phi = [&](HalfPlanePoint pt) { return eval_phi_general(boost(pt, k), z, beta, g, tol); };
      const ResidualReport r = eigen_residual(phi, z, beta, ladder, ctx.jobs);
      Measured m;
      m.value = r.estimated_order;
      m.error_estimate = r.noise_floor;
      m.details = report_json(r);
      return m;
    });
  };
  for (double b : betas)
    for (Complex z : zs)
      check("eigen-residual.order[" + tag("beta", b) + "," + tag("z", z) + "]", z, BetaParam::make(b), 1.0);
  for (double k : real_list_param(p, "boosts"))
    check("eigen-residual.boost-order[" + tag("k", k) + "]", zs.front(), BetaParam::make(betas.front()), k);
  return checks.take();
}

std::vector<CheckRecord> run_peculiar(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const std::vector<GridSpec> ladder = window_ladder(p);
  const BetaParam half = BetaParam::make(0.5);
  checks.at_most("peculiar.boundary-value", 1e-15, [&] {
    Measured m;
    for (Complex z : complex_list_param(p, "z"))
      for (double x : {-1.0, 0.8, 2.5})
        m.value = std::max(m.value, std::abs(peculiar_solution({x, 0.0}, z) - 0.5 * std::polar(1.0, -0.5 * x)));
    return m;
  });
  checks.at_most("peculiar.hand-value", 1e-10, [&] {
    Measured m;
    const Complex v = peculiar_solution({0.0, 1.0}, 0.5);
    m.value = std::abs(v - 0.3535533906);
    m.details["value"] = complex_json(v);
    m.details["oracle"] = (1.0 + std::sqrt(2.0)) / (4.0 + 2.0 * std::sqrt(2.0));
    return m;
  });
  for (Complex z : complex_list_param(p, "z")) {
    ResidualReport r;
    checks.at_least("peculiar.order[" + tag("z", z) + "]", 1.8, [&] {
      const FieldFunction phi = [z](double x, double y) { return peculiar_solution({x, y}, z); };
      r = eigen_residual(phi, z, half, ladder, ctx.jobs);
      Measured m;
      m.value = r.estimated_order;
      m.details = report_json(r);
      return m;
    });
    checks.at_most("peculiar.noise-floor[" + tag("z", z) + "]", 0.0, [&] {
      Measured m;
      m.value = r.noise_floor;
      return m;
    });
  }
  return checks.take();
}

std::vector<CheckRecord> run_flux_identity(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const std::vector<GridSpec> ladder = window_ladder(p);
  struct Pair {
    const char* name;
    FieldFunction phi, psi;
  };
  const std::vector<Pair> pairs{{"xy-gauss,xy-gauss", gauss_xy, gauss_xy},
                                {"x-gauss,y-gauss", gauss_x, gauss_y},
                                {"phase-gauss,y-gauss", gauss_phase, gauss_y}};
  for (double b : real_list_param(p, "beta")) {
    for (const Pair& pair : pairs) {
      checks.within("flux-identity.order[" + std::string(pair.name) + "," + tag("beta", b) + "]", 1.8, 2.3, [&] {
        const ResidualReport r = flux_identity_residual(pair.phi, pair.psi, BetaParam::make(b), ladder);
        Measured m;
        m.value = r.estimated_order;
        m.details = report_json(r);
        return m;
      });
    }
  }
  checks.at_most("flux-identity.constant-dropped-order", 0.2, [&] {
    const ResidualReport r =
        flux_identity_residual(gauss_phase, gauss_y, BetaParam::make(0.5), ladder, ConstantTerm::dropped);
    Measured m;
    m.value = r.estimated_order;
    m.details = report_json(r);
    return m;
  });
  checks.at_most("flux-identity.zero-field", 0.0, [&] {
    const FieldFunction zero = [](double, double) { return Complex{}; };
    const ResidualReport r = flux_identity_residual(zero, zero, BetaParam::make(0.5), ladder);
    Measured m;
    m.value = r.residual_norms.back();
    m.details = report_json(r);
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_hermiticity(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const BetaParam beta = BetaParam::make(real_param(p, "beta"));
  const double x0 = real_param(p, "x-min"), x1 = real_param(p, "x-max"), y0 = real_param(p, "y-min"),
               y1 = real_param(p, "y-max");
  const auto nx = static_cast<std::size_t>(integer_param(p, "nx")), ny = static_cast<std::size_t>(integer_param(p, "ny"));
  const auto levels = static_cast<std::size_t>(integer_param(p, "levels"));
  // Leading discretisation term for x y exp(-x^2 - y^2): both squared gradient
  // norms over y >= 0 equal 3 pi / 64.
  const double gradient = 3.0 * kPi / 64.0;
  std::vector<std::pair<double, double>> ladder;
  std::vector<double> leading;
  Json rows = Json::array();
  checks.within("hermiticity.order", 1.8, 2.3, [&] {
    for (std::size_t level = 0, scale = 1; level < levels; ++level, scale *= 2) {
      const GridSpec spec = GridSpec::make(x0, x1, y0, y1, nx * scale, ny * scale);
      const HermiticityDefect d = hermiticity_defect(GridField::sample(spec, gauss_xy, ctx.jobs),
                                                     GridField::sample(spec, gauss_xy, ctx.jobs), beta);
      ladder.emplace_back(spec.hx(), std::abs(d.value));
      leading.push_back(0.5 * gradient *
                        ((1.0 - beta.value) * spec.hx() * spec.hx() + beta.value * spec.hy() * spec.hy()));
      rows.push_back(Json{{"nx", spec.nx},
                          {"ny", spec.ny},
                          {"defect", complex_json(d.value)},
                          {"constant", d.constant},
                          {"leading_term", leading.back()}});
    }
    Measured m;
    m.value = estimate_order(ladder).estimated_order;
    m.details["field"] = "x y exp(-x^2 - y^2)";
    m.details["levels"] = rows;
    return m;
  });
  checks.at_most("hermiticity.leading-term", 0.03, [&] {
    if (ladder.empty()) throw Error(ErrorKind::precondition, "no ladder");
    Measured m;
    m.value = std::abs(ladder.back().second - leading.back()) / leading.back();
    return m;
  });
  checks.at_least("hermiticity.boundary-filter", 1.0, [&] {
    const GridSpec spec = GridSpec::make(x0, x1, y0, y1, nx, ny);
    const GridField bump =
        GridField::sample(spec, [](double x, double y) { return Complex(std::exp(-x * x - y * y), 0.0); });
    Measured m;
    try {
      hermiticity_defect(bump, bump, beta);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::boundary_violation) m.value = 1.0;
    }
    return m;
  });
  checks.at_most("hermiticity.zero-field", 0.0, [&] {
    const GridSpec spec = GridSpec::make(x0, x1, y0, y1, nx, ny);
    Measured m;
    m.value = std::abs(hermiticity_defect(GridField(spec), GridField::sample(spec, gauss_xy), beta).value);
    return m;
  });
  return checks.take();
}

std::vector<CheckRecord> run_beta_half(const Json& p, const Context& ctx) {
  Checks checks(ctx);
  const std::vector<GridSpec> ladder = window_ladder(p);
  const std::string field = text_param(p, "field");
  const FieldFunction f = field == "xy-gauss" ? FieldFunction(gauss_xy) : FieldFunction([](double x, double y) {
    return Complex(std::exp(-(x * x + y * y) / 4.0), 0.0);
  });
  TransformCheck result;
  checks.within("beta-half.conjugation-order", 1.8, 2.3, [&] {
    result = beta_half_transform_check(f, ladder);
    Measured m;
    m.value = result.conjugation.estimated_order;
    m.details = report_json(result.conjugation);
    return m;
  });
  checks.within("beta-half.light-cone-order", 1.8, 2.3, [&] {
    Measured m;
    m.value = result.light_cone.estimated_order;
    m.details = report_json(result.light_cone);
    return m;
  });
  checks.at_most("beta-half.symbolic", 1e-12, [&] {
    // f = x y = u^2 - v^2: both forms equal 1 + (x y)^2 / 4 with exact stencils.
    const FieldFunction xy = [](double x, double y) { return Complex(x * y, 0.0); };
    Measured m;
    for (auto [x, y] : {std::pair{0.3, 1.2}, std::pair{-1.5, 0.4}, std::pair{2.0, 2.5}}) {
      const Complex want = 1.0 + x * x * y * y / 4.0;
      m.value = std::max({m.value, std::abs(conjugated_operator(xy, x, y, 0.1) - want),
                          std::abs(anti_oscillator(xy, 0.5 * (x + y), 0.5 * (y - x), 0.1) - want)});
    }
    return m;
  });
  return checks.take();
}

// ---------------------------------------------------------------------------
// registry

std::vector<Command> build_commands();

std::vector<CheckRecord> run_suite(const Json&, const Context& ctx) {
  const std::vector<Command>& all = commands();
  const std::size_t n = all.size() - 1;  // every command but the suite itself
  std::vector<std::vector<CheckRecord>> results(n);
  std::mutex progress_lock;
  Context inner = ctx;
  if (ctx.on_check) {
    inner.on_check = [&](const CheckRecord& r) {
      std::lock_guard<std::mutex> guard(progress_lock);
      ctx.on_check(r);
    };
  }
  Json overrides = Json::object();
  overrides["zeros"] = Json{{"expect-count", 3}};
  overrides["orthogonality"] = Json{{"direct", true}};
  parallel_for(
      n,
      [&](std::size_t k) {
        const Command& c = all[k];
        Context local = inner;
        local.jobs = 1;
        const Json given = overrides.contains(c.name) ? overrides[c.name] : Json::object();
        const Json params = resolve_params(c.schema, given);
        if (c.validate) c.validate(params);
        std::vector<CheckRecord> records = c.run(params, local);
        for (CheckRecord& r : records) r.name = c.name + "/" + r.name;
        results[k] = std::move(records);
      },
      ctx.jobs);
  std::vector<CheckRecord> out;
  for (auto& block : results)
    for (CheckRecord& r : block) out.push_back(std::move(r));
  return out;
}

std::vector<Command> build_commands() {
  std::vector<Command> c;

  {
    Schema s{real("t-min", 10.0, "lower ordinate", 0.0), real("t-max", 30.0, "upper ordinate", 0.0, 100.0),
             real("scan-step", 0.05, "sign-change scan step", 1e-4, 1.0),
             integer("expect-count", nullptr, "expected number of zeros (optional)", 0)};
    c.push_back({"zeros", "Zeros of zeta on the critical line in [t-min, t-max], with a 2x finer rescan (about 1 s).", s,
                 [](const Json& p) {
                   if (!(real_param(p, "t-min") < real_param(p, "t-max")))
                     throw UsageError("--t-min must be below --t-max");
                 },
                 run_zeros});
  }
  c.push_back({"functional-eq", "Functional-equation residual at seeded random strip points (about 1 s).",
               Schema{integer("samples", 100, "number of strip points", 1, 100000), integer("seed", 7, "sampler seed"),
                      real("im-max", 40.0, "largest |Im z|", 0.0, 100.0)},
               nullptr, run_functional_eq});
  c.push_back({"zzfc",
               "Zeta at even integers, series vs integral route, and the Fermi-Dirac integral at zeros and at "
               "control points (about 10 s).",
               Schema{real("t-min", 10.0, "lower ordinate for zeros", 0.0),
                      real("t-max", 30.0, "upper ordinate for zeros", 0.0, 100.0),
                      integer("strip-samples", 50, "strip points for the series/integral comparison", 1, 10000),
                      integer("seed", 5, "sampler seed"),
                      complex_list("controls", default_controls(), "control points away from zeros")},
               [](const Json& p) {
                 if (!(real_param(p, "t-min") < real_param(p, "t-max")))
                   throw UsageError("--t-min must be below --t-max");
                 for (Complex z : complex_list_param(p, "controls"))
                   if (!(z.real() > 0.0 && z.real() < 1.0)) throw UsageError("--controls must lie in 0 < Re z < 1");
               },
               run_zzfc});
  c.push_back({"f0-eval", "One evaluation of the solution family at (x, y) with its error estimate (under 1 s).",
               Schema{real("x", 0.7, "x coordinate"), real("y", 1.0, "y coordinate", 0.0),
                      complex("z", complex_json({0.5, 3.0}), "spectral parameter, Re z > 0"),
                      real("beta", 0.5, "mixing parameter", 0.0, 1.0),
                      text("envelope", "fermi", "envelope g", {"fermi", "exponential", "gaussian"})},
               [](const Json& p) {
                 if (complex_param(p, "z").real() <= 0.0) throw UsageError("--z needs a positive real part");
               },
               run_f0_eval});
  c.push_back({"special-cases",
               "beta = 1 and beta = 0 closed forms of F0 on seeded samples, and the phi1 boundary value. With --beta, "
               "--z, --x and --y, checks one point only (about 5 s).",
               Schema{real("beta", nullptr, "0 or 1 (single-point mode)", 0.0, 1.0),
                      complex("z", nullptr, "spectral parameter (single-point mode)"),
                      real("x", nullptr, "x coordinate (single-point mode)"),
                      real("y", nullptr, "y coordinate (single-point mode)"),
                      integer("samples", 20, "points per closed form", 1, 1000), integer("seed", 11, "sampler seed"),
                      complex("theta", complex_json({0.4, 0.3}), "phi1 parameter, 0 < Re theta < 1")},
               validate_special_cases, run_special_cases});
  c.push_back({"lerch-suite", "Lerch series vs integral, duplication identities and PDE order (about 5 s).",
               Schema{integer("seed", 21, "sampler seed"), integer("series-samples", 30, "series/integral points", 1, 10000),
                      integer("identity-samples", 50, "duplication points", 1, 10000),
                      integer("pde-samples", 10, "PDE ladder points", 1, 1000)},
               nullptr, run_lerch_suite});
  {
    Schema s{real_list("beta", Json::array({0.3, 0.5, 0.7}), "mixing parameters", 0.0, 1.0),
             complex_list("z", Json::array({complex_json({0.5, 3.0}), complex_json({0.75, -2.0})}), "spectral parameters"),
             text("envelope", "fermi", "envelope g", {"fermi", "exponential", "gaussian"}),
             real_list("boosts", Json::array({0.5, 2.0}), "boost factors k applied to the first (beta, z)", 1e-3, 1e3)};
    add_window(s, 0.5, 2.0, 0.5, 2.0, 9);
    c.push_back({"eigen-residual",
                 "Finite-difference residual of H phi = lambda phi for the solution family on a refinement ladder "
                 "(about 15 s).",
                 s,
                 [](const Json& p) {
                   validate_window(p);
                   for (Complex z : complex_list_param(p, "z"))
                     if (z.real() <= 0.0) throw UsageError("--z needs positive real parts");
                 },
                 run_eigen_residual});
  }
  {
    Schema s{complex_list("z", Json::array({complex_json({0.5, 3.0}), complex_json({0.8, -1.0})}), "spectral parameters")};
    add_window(s, -2.0, 2.0, 0.0, 2.0, 9);
    c.push_back({"peculiar", "Closed-form beta = 1/2 eigenfunction: values and residual order (under 1 s).", s,
                 validate_window, run_peculiar});
  }
  {
    Schema s{real_list("beta", Json::array({0.3, 0.5}), "mixing parameters", 0.0, 1.0)};
    add_window(s, -2.0, 2.0, 0.0, 2.0, 17);
    c.push_back({"flux-identity",
                 "Flux identity for analytic field pairs, with the constant term and without it (about 1 s).", s,
                 validate_window, run_flux_identity});
  }
  c.push_back({"hermiticity", "Hermiticity defect of boundary-compliant Gaussians on a resolution ladder (about 1 s).",
               Schema{real("beta", 0.3, "mixing parameter", 0.0, 1.0), real("x-min", -6.0, "window left edge"),
                      real("x-max", 6.0, "window right edge"), real("y-min", 0.0, "window bottom edge", 0.0),
                      real("y-max", 6.0, "window top edge", 0.0), integer("nx", 50, "coarsest x nodes", 5, 4096),
                      integer("ny", 25, "coarsest y nodes", 5, 4096), integer("levels", 3, "ladder levels", 3, 6)},
               validate_window, run_hermiticity});
  {
    Schema s{text("field", "gaussian", "test field", {"gaussian", "xy-gauss"})};
    add_window(s, -2.0, 2.0, 0.0, 2.0, 9);
    c.push_back({"beta-half", "beta = 1/2 transform chain and its light-cone form (under 1 s).", s, validate_window,
                 run_beta_half});
  }
  c.push_back({"scale-average",
               "Boost average of f0: direct vs factorized path, vanishing at a zero, control (about 20 s).",
               Schema{real("x", 1.0, "x coordinate"), real("y", 1.0, "y coordinate", 0.0),
                      real("beta", 0.4, "mixing parameter, 0 < beta < 1", 0.0, 1.0),
                      complex("z-zero", nullptr, "zero of zeta (default: first zero)"),
                      complex("z-control", complex_json({0.7, 5.0}), "control point"),
                      complex("z-compare", complex_json({0.6, 3.0}), "point for the direct/factorized comparison")},
               nullptr, run_scale_average});
  c.push_back({"orthogonality",
               "Overlap of f0 with a boost-invariant function: reduced path at a zero and at a control; --direct adds "
               "the 2-D quadrature (about 2 s, 15 s more with --direct).",
               Schema{text("envelope", "gaussian", "profile G of the invariant function", {"fermi", "exponential", "gaussian"}),
                      real("beta", 0.5, "mixing parameter", 0.0, 1.0), real("cut", 30.0, "domain cut", 1.0, 1000.0),
                      complex("z-zero", nullptr, "zero of zeta (default: first zero)"),
                      complex("z-control", complex_json({0.7, 5.0}), "control point"),
                      complex("z-compare", complex_json({0.6, 3.0}), "point for the direct/reduced comparison"),
                      flag("direct", false, "also run the direct 2-D quadrature")},
               nullptr, run_orthogonality});
  c.push_back({"decay-bounds", "Log-log decay slopes of f0 along three rays against the bound exponents (about 10 s).",
               Schema{complex("z", complex_json({0.75, 0.0}), "spectral parameter in the strip"),
                      real("beta", 0.5, "mixing parameter, 0 < beta < 1", 0.0, 1.0),
                      integer("samples", 12, "points per ray", 3, 200)},
               nullptr, run_decay_bounds});
  c.push_back({"suite", "Every command above at its defaults, except that zeros expects 3 zeros in [10, 30] and orthogonality adds "
               "--direct (about 40 s on one core).",
               Schema{}, nullptr, run_suite});
  return c;
}

}  // namespace

ToleranceSpec Settings::tolerance(ToleranceSpec base) const {
  if (tol_rel) base.rel_tol = *tol_rel;
  if (tol_abs) base.abs_tol = *tol_abs;
  if (max_evals) base.max_evaluations = static_cast<std::size_t>(*max_evals);
  return base;
}

Json Settings::to_json() const {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"tol_rel", opt(tol_rel)}, {"tol_abs", opt(tol_abs)}, {"max_evals", opt(max_evals)}, {"check_tol", opt(check_tol)}};
}

Settings Settings::from_json(const Json& j) {
  Settings s;
  if (!j.is_object()) return s;
  auto real_or = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
  };
  s.tol_rel = real_or("tol_rel");
  s.tol_abs = real_or("tol_abs");
  s.check_tol = real_or("check_tol");
  if (j.contains("max_evals") && !j["max_evals"].is_null()) s.max_evals = j["max_evals"].get<long>();
  return s;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> all = build_commands();
  return all;
}

const Command* find_command(const std::string& name) {
  for (const Command& c : commands())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace zetalab::cli
