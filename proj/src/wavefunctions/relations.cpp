#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/detail/gauss_legendre.hpp"
#include "zetalab/wavefunctions.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Nodes and weights of unit-width panels covering [lo, hi].
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PanelRule unit_panels(double lo, double hi) {
  PanelRule rule;
  const auto panels = static_cast<std::size_t>(std::ceil(hi - lo - 1e-12));
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = lo + width * (static_cast<double>(k) + 0.5);
    for (std::size_t i = 0; i < detail::kGaussLegendre8Nodes.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * width * detail::kGaussLegendre8Nodes[i]);
      rule.weights.push_back(0.5 * width * detail::kGaussLegendre8Weights[i]);
    }
  }
  return rule;
}

ToleranceSpec scaled(const ToleranceSpec& tol, double factor) {
  ToleranceSpec out = tol;
  out.rel_tol = factor * tol.rel_tol;
  out.abs_tol = factor * tol.abs_tol;
  return out;
}

void require_strip(Complex z, const char* what) {
  if (!is_finite(z) || !(z.real() > 0.0 && z.real() < 1.0))
    throw Error(ErrorKind::domain, std::string(what) + " needs 0 < Re z < 1");
}

}  // namespace

QuadratureResult scale_average_kernel(double x, double y, Complex z, const ToleranceSpec& tol) {
  tol.validate();
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "kernel needs Re z > 0");
  if (!(y > 0.0) || x == 0.0 || !std::isfinite(x) || !std::isfinite(y))
    throw Error(ErrorKind::precondition, "kernel needs x != 0 and y > 0");
  // s -> s / |x| shows K(x, y) = K(sign x, |x| y).
  const double sign = x > 0.0 ? 1.0 : -1.0;
  const double c = std::abs(x) * y;
  auto h = [sign, c, z](Complex w) { return std::exp(-z * std::log(w + c) + kI * sign * w); };
  std::vector<double> candidates;
  for (int j = 1; j <= 8; ++j) candidates.push_back(sign * (kPi / 2 - 0.05) * j / 8.0);
  const auto choice = select_mellin_ray(z, h, candidates);
  if (!choice) throw Error(ErrorKind::slow_decay, "kernel integrand does not decay on any ray");
  ToleranceSpec local = tol;
  local.abs_tol = std::max(tol.abs_tol, 256.0 * kEps * choice->l1_norm);
  return mellin_along_ray(z, h, choice->alpha, local);
}

ScaleAverage scale_average(HalfPlanePoint p, Complex z, BetaParam beta, const ScaleWeightSpec& weight,
                           const ToleranceSpec& tol, bool with_direct) {
  tol.validate();
  require_strip(z, "scale average");
  ScaleAverage out;
  const QuadratureResult fd = fermi_dirac_integral(z, scaled(tol, 0.1));
  const QuadratureResult kernel = scale_average_kernel(p.x, p.y, z, scaled(tol, 0.1));
  out.kernel = kernel.value;
  out.fermi_dirac = fd.value;
  out.factor_scale = std::abs(kernel.value) * zzfc_scale(z);
  if (weight.is_unit()) {
    QuadratureResult f;
    f.value = kernel.value * fd.value;
    f.abs_error_estimate = std::abs(kernel.value) * fd.abs_error_estimate + std::abs(fd.value) * kernel.abs_error_estimate;
    f.evaluations = kernel.evaluations + fd.evaluations;
    f.converged = kernel.converged && fd.converged;
    out.factorized = f;
  }
  if (!with_direct) return out;

  // k = e^{+-s}: each half-line decays like e^{-s Re z / beta} or e^{-s Re z / (1 - beta)}.
  beta.require_open();
  ToleranceSpec outer = tol;
  outer.abs_tol = std::max(tol.abs_tol, tol.rel_tol * out.factor_scale);
  ToleranceSpec inner = scaled(outer, 0.01);
  auto half_line = [&](double direction) {
    return integrate_semi_infinite(
        [&, direction](double s) {
          const double k = std::exp(direction * s);
          const double w = weight(k);
          if (w == 0.0) return Complex{};
          return w * eval_f0(boost(p, k), z, beta, inner).value;
        },
        outer);
  };
  QuadratureResult direct = half_line(1.0);
  direct += half_line(-1.0);
  out.direct = direct;
  return out;
}

OrthogonalityScalar orthogonality_scalar(const EnvelopeSpec& G, Complex z, BetaParam beta, double domain_cut,
                                         const ToleranceSpec& tol, bool with_direct) {
  tol.validate();
  require_strip(z, "orthogonality scalar");
  if (!(domain_cut > 1.0) || !std::isfinite(domain_cut))
    throw Error(ErrorKind::precondition, "domain cut must exceed 1");
  OrthogonalityScalar out;

  // y = xi / x turns the x-integral into the scale average at (1, xi).
  const ToleranceSpec kernel_tol = scaled(tol, 0.1);
  const QuadratureResult xi_integral = integrate_semi_infinite(
      [&](double xi) {
        if (xi == 0.0) return Complex{};
        const Complex g = G(xi);
        if (g == Complex{}) return Complex{};
        return std::conj(g) * scale_average_kernel(1.0, xi, z, kernel_tol).value;
      },
      tol);
  const QuadratureResult fd = fermi_dirac_integral(z, scaled(tol, 0.1));
  out.reduced.value = xi_integral.value * fd.value;
  out.reduced.abs_error_estimate =
      std::abs(xi_integral.value) * fd.abs_error_estimate + std::abs(fd.value) * xi_integral.abs_error_estimate;
  out.reduced.evaluations = xi_integral.evaluations + fd.evaluations;
  out.reduced.converged = xi_integral.converged && fd.converged;
  out.scale = std::abs(xi_integral.value) * zzfc_scale(z);
  if (!with_direct) return out;

  // Direct box integral in log coordinates x = e^p, y = e^q, p, q in [-12, ln cut].
  // Panels far beyond the envelope's reach (x y > 40) are skipped.
  constexpr double kLogFloor = -12.0;
  const double log_cut = std::log(domain_cut);
  const PanelRule rule = unit_panels(kLogFloor, log_cut);
  const std::size_t n = rule.nodes.size();
  std::vector<Complex> row_sums(n);
  std::vector<double> row_edge(n);
  const double edge_start = log_cut - 1.0;
  const ToleranceSpec point_tol = ToleranceSpec::oscillatory();
  std::vector<std::size_t> row_evals(n);
  parallel_for(n, [&](std::size_t i) {
    const double x = std::exp(rule.nodes[i]);
    Complex sum{};
    double edge = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double y = std::exp(rule.nodes[j]);
      if (x * y > 40.0 && G.kind() != EnvelopeKind::sampled) continue;
      const Complex g = G(x * y);
      if (g == Complex{}) continue;
      const QuadratureResult f = eval_f0({x, y}, z, beta, point_tol);
      row_evals[i] += f.evaluations;
      const Complex term = rule.weights[i] * rule.weights[j] * x * y * std::conj(g) * f.value;
      sum += term;
      if (rule.nodes[i] > edge_start || rule.nodes[j] > edge_start) edge += std::abs(term);
    }
    row_sums[i] = sum;
    row_edge[i] = edge;
  });
  QuadratureResult direct;
  double edge_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    direct.value += row_sums[i];
    edge_mass += row_edge[i];
    direct.evaluations += row_evals[i];
  }
  // The outermost log-panel's mass stands in for the truncated tail.
  direct.abs_error_estimate = edge_mass;
  direct.converged = true;
  out.direct = direct;
  out.truncation_warning = edge_mass > tol.abs_tol;
  return out;
}

EigenOrthogonality eigen_orthogonality(const Phi1Params& phi1, const F0Params& f0, const std::vector<double>& cuts,
                                       const ToleranceSpec& tol) {
  tol.validate();
  const Complex lambda1 = (phi1.theta - 0.5) / kI;
  const Complex lambda = (f0.z - 0.5) / kI;
  if (std::abs(std::conj(lambda1) - lambda) <= 1e-6)
    throw Error(ErrorKind::precondition, "orthogonality needs conj(lambda_1) != lambda");
  if (cuts.empty()) throw Error(ErrorKind::precondition, "cut ladder is empty");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!(cuts[i] > 0.0) || std::floor(cuts[i]) != cuts[i])
      throw Error(ErrorKind::precondition, "cuts must be positive integers");
    if (i > 0 && !(cuts[i] > cuts[i - 1])) throw Error(ErrorKind::precondition, "cuts must increase");
  }
  const bool lerch_path = phi1.g.kind() == EnvelopeKind::exponential && phi1.k.power == 1.0 &&
                          phi1.z.real() > 0.0 && phi1.theta.real() > 0.0 && phi1.theta.real() < 1.0;

  // One sweep over the largest box; smaller boxes are unions of its unit panels.
  const double top = cuts.back();
  const PanelRule xs = unit_panels(-top, top);
  const PanelRule ys = unit_panels(0.0, top);
  const std::size_t nx = xs.nodes.size(), ny = ys.nodes.size();
  std::vector<Complex> cell(nx * ny);
  parallel_for(ny, [&](std::size_t j) {
    const double y = ys.nodes[j];
    std::optional<Phi1Row> row;
    if (lerch_path) row.emplace(y, top, phi1, tol);
    for (std::size_t i = 0; i < nx; ++i) {
      const HalfPlanePoint p{xs.nodes[i], y};
      const Complex phi1_value =
          row ? (*row)(p.x)
              : eval_phi1(p, phi1.z, phi1.theta, phi1.beta, phi1.g, phi1.k, Phi1Variant::interval, tol).value;
      const Complex value = std::conj(phi1_value) * eval_f0(p, f0.z, f0.beta, tol).value;
      cell[i * ny + j] = xs.weights[i] * ys.weights[j] * value;
    }
  });
  EigenOrthogonality out;
  for (double cut : cuts) {
    Complex sum{};
    for (std::size_t i = 0; i < nx; ++i) {
      if (std::abs(xs.nodes[i]) > cut) continue;
      for (std::size_t j = 0; j < ny; ++j)
        if (ys.nodes[j] < cut) sum += cell[i * ny + j];
    }
    if (!out.ladder.empty() && std::abs(sum) > std::abs(out.ladder.back().value)) out.non_decaying_trend = true;
    out.ladder.push_back({cut, sum});
  }
  return out;
}

ResidualReport derivative_recurrence_residual(HalfPlanePoint p, Complex z, BetaParam beta,
                                              const std::vector<double>& step_ladder, RecurrenceForm form) {
  const double b = beta.value;
  const Complex shifted = z + 1.0 - b;
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "recurrence needs Re z > 0");
  const ToleranceSpec tight{1e-13, 1e-16, 2'000'000};
  const QuadratureResult rhs_f0 = eval_F0(p, shifted, beta, tight);
  const Complex factor = form == RecurrenceForm::corrected ? std::exp(log_gamma(shifted) - log_gamma(z)) : 1.0;
  const Complex rhs = kI * factor * rhs_f0.value;

  std::vector<std::pair<double, double>> ladder;
  double floor = 0.0;
  for (double h : step_ladder) {
    if (!(h > 0.0)) throw Error(ErrorKind::precondition, "steps must be positive");
    const QuadratureResult plus = eval_F0({p.x + h, p.y}, z, beta, tight);
    const QuadratureResult minus = eval_F0({p.x - h, p.y}, z, beta, tight);
    const Complex derivative = (plus.value - minus.value) / (2.0 * h);
    ladder.emplace_back(h, std::abs(derivative - rhs));
    floor = (plus.abs_error_estimate + minus.abs_error_estimate) / (2.0 * h) +
            std::abs(factor) * rhs_f0.abs_error_estimate;
  }
  ResidualReport report = estimate_order(ladder);
  report.noise_floor = floor;
  return report;
}

DecayProbe decay_probe(Complex z, BetaParam beta, DecayRay ray, std::size_t samples) {
  beta.require_open();
  if (!is_finite(z) || !(z.real() > 0.0)) throw Error(ErrorKind::domain, "decay probe needs Re z > 0");
  if (samples < 3) throw Error(ErrorKind::precondition, "decay probe needs at least 3 samples");
  const double b = beta.value;
  DecayProbe out;
  out.ray = ray;
  switch (ray) {
    case DecayRay::x_axis: out.bound_exponent = -z.real() / (1.0 - b); break;
    case DecayRay::y_axis: out.bound_exponent = -z.real() / b; break;
    case DecayRay::diagonal: out.bound_exponent = -z.real(); break;
  }
  out.samples.resize(samples);
  parallel_for(samples, [&](std::size_t i) {
    const double coordinate = 5.0 * std::pow(100.0, static_cast<double>(i) / static_cast<double>(samples - 1));
    HalfPlanePoint p{};
    switch (ray) {
      case DecayRay::x_axis: p = {coordinate, 0.0}; break;
      case DecayRay::y_axis: p = {0.0, coordinate}; break;
      case DecayRay::diagonal: p = {std::sqrt(coordinate), std::sqrt(coordinate)}; break;
    }
    out.samples[i] = {coordinate, std::abs(eval_f0(p, z, beta).value)};
  });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [c, m] : out.samples) {
    if (!(m > 0.0)) throw Error(ErrorKind::domain, "f_0 vanished on the probe ray");
    const double lx = std::log(c), ly = std::log(m);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    out.constant = std::max(out.constant, m / std::pow(c, out.bound_exponent));
    out.sup_modulus = std::max(out.sup_modulus, m);
  }
  const double n = static_cast<double>(samples);
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace zetalab
