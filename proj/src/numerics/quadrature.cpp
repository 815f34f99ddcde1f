#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a = 0.0;
  double b = 0.0;
  Complex value{};
  double error = 0.0;     // max(|K15 - G7|, roundoff floor)
  double raw_error = 0.0; // |K15 - G7|
  double floor = 0.0;

  bool operator<(const Segment& other) const {
    if (error != other.error) return error < other.error;
    return a > other.a;  // deterministic tie-break: leftmost first
  }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto sample = [&](double x) {
    const Complex v = f(x);
    if (!is_finite(v))
      throw Error(ErrorKind::non_finite_sample, "integrand returned a non-finite value at " + std::to_string(x));
    return v;
  };
  const Complex fc = sample(center);
  Complex kronrod = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex f1 = sample(center - dx);
    const Complex f2 = sample(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.raw_error = std::abs((kronrod - gauss) * half);
  s.floor = 50.0 * kEps * abs_sum * std::abs(half);
  s.error = std::max(s.raw_error, s.floor);
  return s;
}

constexpr std::size_t kEvalsPerSegment = 15;

// Global adaptive bisection over the given breakpoints. Segments touching a
// point in `singular` carry error max(|K15 - G7|, |K15|): the Kronrod
// difference is unreliable next to an endpoint singularity.
QuadratureResult adaptive(const Integrand& f, std::vector<double> breaks, const ToleranceSpec& tol,
                          std::vector<double> singular = {}) {
  auto evaluate = [&](double a, double b) {
    Segment s = gauss_kronrod(f, a, b);
    for (double p : singular)
      if (a == p || b == p) {
        s.raw_error = std::max(s.raw_error, std::abs(s.value));
        s.error = std::max(s.raw_error, s.floor);
      }
    return s;
  };
  std::priority_queue<Segment> heap;
  QuadratureResult out;
  auto charge = [&](std::size_t n) {
    if (out.evaluations + n > tol.max_evaluations)
      throw Error(ErrorKind::budget_exceeded,
                  "quadrature needed more than " + std::to_string(tol.max_evaluations) + " evaluations");
    out.evaluations += n;
  };
  Complex total{};
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    charge(kEvalsPerSegment);
    Segment s = evaluate(breaks[i], breaks[i + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }
  std::size_t iterations = 0;
  while (true) {
    if (++iterations % 64 == 0) {
      // resum to keep the running totals free of drift
      auto copy = heap;
      total = 0.0;
      total_error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
    const double target = tol.target(std::abs(total));
    if (total_error <= target) {
      out.converged = true;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool splittable = mid > worst.a && mid < worst.b &&
                            (worst.b - worst.a) > 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b));
    // Nothing left to gain: the worst segment is at its roundoff floor or cannot be split.
    if (!splittable || worst.raw_error <= worst.floor) {
      out.converged = false;
      break;
    }
    heap.pop();
    charge(2 * kEvalsPerSegment);
    const Segment left = evaluate(worst.a, mid);
    const Segment right = evaluate(mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error_estimate = total_error;
  out.converged = out.converged && total_error <= tol.target(std::abs(total));
  return out;
}

}  // namespace

QuadratureResult integrate_finite(const EndpointIntegrand& f, double a, double b, const ToleranceSpec& tol,
                                  EndpointMode mode) {
  tol.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorKind::precondition, "integrate_finite requires finite a < b");
  const double width = b - a;
  // Mapped nodes that round onto an endpoint are pulled back inside.
  const double inner_a = std::nextafter(a, b);
  const double inner_b = std::nextafter(b, a);
  auto clamp = [&](double u) { return std::clamp(u, inner_a, inner_b); };
  switch (mode) {
    case EndpointMode::smooth:
      return adaptive([&](double u) { return f(u, b - u); }, {a, b}, tol);
    case EndpointMode::left_singular: {
      Integrand g = [&](double s) {
        const double u = clamp(a + width * s * s);
        return f(u, b - u) * (2.0 * width * s);
      };
      return adaptive(g, {0.0, 1.0}, tol, {0.0});
    }
    case EndpointMode::both_singular: {
      // s in [0,1]: u = a + (w/2) s^2 ; s in [1,2]: b - u = (w/2)(2-s)^2.
      const double hw = 0.5 * width;
      Integrand g = [&](double s) {
        if (s <= 1.0) {
          const double u = clamp(a + hw * s * s);
          return f(u, b - u) * (2.0 * hw * s);
        }
        const double r = 2.0 - s;
        const double gap = std::max(hw * r * r, std::numeric_limits<double>::denorm_min());
        return f(clamp(b - gap), gap) * (2.0 * hw * r);
      };
      return adaptive(g, {0.0, 1.0, 2.0}, tol, {0.0, 2.0});
    }
  }
  throw Error(ErrorKind::precondition, "unknown endpoint mode");
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const ToleranceSpec& tol,
                                  EndpointMode mode) {
  return integrate_finite([&](double u, double) { return f(u); }, a, b, tol, mode);
}

namespace {

ToleranceSpec remaining(const ToleranceSpec& tol, std::size_t used, double abs_tol) {
  if (used >= tol.max_evaluations)
    throw Error(ErrorKind::budget_exceeded,
                "quadrature needed more than " + std::to_string(tol.max_evaluations) + " evaluations");
  ToleranceSpec t = tol;
  t.abs_tol = std::max(abs_tol, std::numeric_limits<double>::min());
  t.max_evaluations = tol.max_evaluations - used;
  return t;
}

// Largest |f| on a few probe points of [lo, hi]; a cheap proxy for the modulus bound.
double probe_modulus(const Integrand& f, double lo, double hi, std::size_t& evaluations) {
  double m = 0.0;
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Complex v = f(lo + frac * (hi - lo));
    if (!is_finite(v)) throw Error(ErrorKind::non_finite_sample, "integrand returned a non-finite value");
    m = std::max(m, std::abs(v));
  }
  evaluations += 5;
  return m;
}

}  // namespace

namespace {

QuadratureResult semi_infinite_pass(const Integrand& f, const ToleranceSpec& tol,
                                    const std::optional<OscillationHint>& hint) {
  const bool oscillatory = hint && hint->rate != 0.0;

  auto boundary = [&](std::size_t n) {
    return std::pow(static_cast<double>(n) * kPi / std::abs(hint->rate), 1.0 / hint->power);
  };

  const double t0 = oscillatory ? std::min(1.0, boundary(1)) : 1.0;
  QuadratureResult out = integrate_finite(f, 0.0, t0, remaining(tol, 0, tol.abs_tol * 0.25), EndpointMode::left_singular);
  bool converged = out.converged;

  if (!oscillatory) {
    double lo = t0;
    while (true) {
      const double hi = 2.0 * lo;
      if (lo > kMaxTruncation)
        throw Error(ErrorKind::slow_decay, "integrand tail did not fall below tolerance by t = 1e4");
      const double target = tol.target(std::abs(out.value));
      QuadratureResult panel = integrate_finite(f, lo, hi, remaining(tol, out.evaluations, target * 0.125),
                                                EndpointMode::smooth);
      out += panel;
      converged = converged && panel.converged;
      const double bound = probe_modulus(f, hi, 2.0 * hi, out.evaluations) * hi;
      if (std::abs(panel.value) <= target * 0.1 && bound <= tol.target(std::abs(out.value)) * 0.1) break;
      lo = hi;
    }
    out.converged = converged && out.abs_error_estimate <= tol.target(std::abs(out.value));
    return out;
  }

  // Phase-aligned panels. Small-t panels between t0 and the first phase
  // boundary are absent because t0 <= boundary(1).
  std::vector<Complex> partial{out.value};
  double panel_errors = out.abs_error_estimate;
  double lo = t0;
  std::size_t n = 1;
  if (t0 < boundary(1)) n = 0;  // t0 == 1 < first boundary: next panel ends at boundary(1)
  AcceleratedSum previous{};
  int stable = 0;
  constexpr std::size_t kMinPanelsForAcceleration = 12;
  constexpr std::size_t kAccelerationWindow = 40;
  while (true) {
    const double hi = boundary(n + 1);
    if (lo > kMaxTruncation)
      throw Error(ErrorKind::slow_decay, "oscillatory tail did not settle by t = 1e4");
    const double target = tol.target(std::abs(partial.back()));
    QuadratureResult panel = integrate_finite(f, lo, hi, remaining(tol, out.evaluations, target * 0.05),
                                              EndpointMode::smooth);
    out.evaluations += panel.evaluations;
    panel_errors += panel.abs_error_estimate;
    converged = converged && panel.converged;
    partial.push_back(partial.back() + panel.value);
    ++n;
    lo = hi;

    // Exponentially decaying tail: plain summation suffices.
    if (std::abs(panel.value) <= target * 0.1) {
      const double bound = probe_modulus(f, hi, boundary(n + 1), out.evaluations) * (boundary(n + 1) - hi);
      if (bound <= target * 0.1) {
        out.value = partial.back();
        out.abs_error_estimate = panel_errors;
        out.converged = converged && panel_errors <= tol.target(std::abs(out.value));
        return out;
      }
    }
    if (partial.size() >= kMinPanelsForAcceleration) {
      const std::size_t window = std::min(partial.size() - 1, kAccelerationWindow);
      const std::span<const Complex> tail(partial.data() + partial.size() - window, window);
      const AcceleratedSum accel = iterated_average(tail);
      const double change = std::abs(accel.value - previous.value);
      previous = accel;
      if (change <= 0.25 * tol.target(std::abs(accel.value))) {
        if (++stable >= 2) {
          out.value = accel.value;
          out.abs_error_estimate = panel_errors + change + accel.error_estimate;
          out.converged = converged && out.abs_error_estimate <= tol.target(std::abs(out.value));
          return out;
        }
      } else {
        stable = 0;
      }
    }
  }
}

}  // namespace

QuadratureResult integrate_semi_infinite(const Integrand& f, const ToleranceSpec& tol,
                                         std::optional<OscillationHint> hint) {
  tol.validate();
  if (hint && hint->rate != 0.0 && !(hint->power > 0.0))
    throw Error(ErrorKind::precondition, "oscillation hint requires a positive phase power");
  QuadratureResult out = semi_infinite_pass(f, tol, hint);
  // Pieces meet their own relative targets; when they cancel, the total can
  // still miss. Rerun with an absolute target set by the total just found.
  for (int pass = 0; pass < 2 && !out.converged; ++pass) {
    const double goal = tol.target(std::abs(out.value));
    if (out.abs_error_estimate <= goal) break;
    ToleranceSpec tight = remaining(tol, out.evaluations, 0.25 * goal);
    tight.rel_tol = 1e-15;
    const std::size_t used = out.evaluations;
    out = semi_infinite_pass(f, tight, hint);
    out.evaluations += used;
    out.converged = out.abs_error_estimate <= tol.target(std::abs(out.value));
  }
  return out;
}

QuadratureResult mellin_along_ray(Complex z, const std::function<Complex(Complex)>& h, double alpha,
                                  const ToleranceSpec& tol) {
  const Complex direction = std::polar(1.0, alpha);
  const Complex zm1 = z - 1.0;
  // Tolerances apply to the ray integral; rescale them by |e^{i alpha z}|.
  const Complex phase = std::exp(kI * alpha * z);
  const double scale = std::abs(phase);
  ToleranceSpec ray_tol = tol;
  ray_tol.abs_tol = tol.abs_tol / scale;
  Integrand integrand = [&](double r) {
    if (r == 0.0) return Complex{};
    return std::exp(zm1 * std::log(r)) * h(r * direction);
  };
  QuadratureResult out = integrate_semi_infinite(integrand, ray_tol);
  out.value *= phase;
  out.abs_error_estimate *= scale;
  return out;
}

std::optional<RayChoice> select_mellin_ray(Complex z, const std::function<Complex(Complex)>& h,
                                           std::span<const double> candidates) {
  constexpr double kLogMin = -20.0, kLogMax = 4.0;
  constexpr int kPerDecade = 8;
  constexpr int kPoints = static_cast<int>((kLogMax - kLogMin) * kPerDecade) + 1;
  const double step = std::log(10.0) / kPerDecade;
  std::optional<RayChoice> best;
  for (double alpha : candidates) {
    const Complex direction = std::polar(1.0, alpha);
    double sum = 0.0;
    double last = 0.0;
    bool ok = true;
    for (int i = 0; i < kPoints; ++i) {
      const double r = std::pow(10.0, kLogMin + static_cast<double>(i) / kPerDecade);
      const Complex v = h(r * direction);
      // |r^{z-1}| r, the extra r from dr = r d(ln r)
      const double m = std::abs(v) * std::pow(r, z.real());
      if (!std::isfinite(m)) {
        ok = false;
        break;
      }
      sum += (i == 0 || i == kPoints - 1 ? 0.5 : 1.0) * m;
      last = m;
    }
    if (!ok) continue;
    const double l1 = sum * step * std::exp(-alpha * z.imag());
    if (!std::isfinite(l1) || last * step > 1e-20 * sum) continue;
    if (!best || l1 < best->l1_norm) best = RayChoice{alpha, l1};
  }
  return best;
}

}  // namespace zetalab
