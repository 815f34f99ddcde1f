#include <algorithm>
#include <cmath>
#include <string>

#include "zetalab/detail/grid_nodes.hpp"
#include "zetalab/hamiltonian.hpp"

namespace zetalab {
namespace {

struct Derivatives {
  Complex dx, dy, dxy;
};

Derivatives stencil(const GridField& f, std::size_t i, std::size_t j) {
  const double hx = f.spec().hx(), hy = f.spec().hy();
  return Derivatives{
      (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hx),
      (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * hy),
      (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) + f.at(i - 1, j - 1)) / (4.0 * hx * hy),
  };
}

void require_interior(const GridSpec& s, std::size_t margin) {
  if (s.nx < 2 * margin + 1 || s.ny < 2 * margin + 1)
    throw Error(ErrorKind::grid_too_small, "grid has no interior at margin " + std::to_string(margin));
}

}  // namespace

GridField apply_H(const GridField& phi, BetaParam beta, ConstantTerm constant) {
  const GridSpec& s = phi.spec();
  require_interior(s, 1);
  const double b = beta.value;
  const Complex shift = constant == ConstantTerm::included ? Complex(0.0, 0.5) : Complex{};
  GridField out(s);
  for (std::size_t i = 1; i + 1 < s.nx; ++i) {
    for (std::size_t j = 1; j + 1 < s.ny; ++j) {
      const Derivatives d = stencil(phi, i, j);
      out.at(i, j) = d.dxy + kI * b * s.y(j) * d.dy + kI * (1.0 - b) * s.x(i) * d.dx + shift * phi.at(i, j);
    }
  }
  return out;
}

ResidualReport eigen_residual(const NoisyFieldFunction& phi, Complex z, BetaParam beta,
                              const std::vector<GridSpec>& ladder, unsigned jobs) {
  if (ladder.size() < 3) throw Error(ErrorKind::degenerate_ladder, "eigen residual needs at least three grids");
  const Complex lambda = (z - 0.5) / kI;
  const double b = beta.value;
  std::vector<std::pair<double, double>> rows;
  std::vector<double> floors;
  for (const GridSpec& s : ladder) {
    require_interior(s, 1);
    GridField field(s);
    std::vector<double> row_noise(s.nx, 0.0);
    parallel_for(
        s.nx,
        [&](std::size_t i) {
          for (std::size_t j = 0; j < s.ny; ++j) {
            const QuadratureResult r = phi({s.x(i), s.y(j)});
            if (!is_finite(r.value)) throw Error(ErrorKind::non_finite_sample, "field sample is not finite");
            field.at(i, j) = r.value;
            row_noise[i] = std::max(row_noise[i], r.abs_error_estimate);
          }
        },
        jobs);
    const double noise = *std::max_element(row_noise.begin(), row_noise.end());
    const GridField h_phi = apply_H(field, beta);
    double residual = 0.0;
    const detail::NodeSelection nodes = detail::shared_nodes(ladder.front(), s, 1);
    for (std::size_t i = nodes.first; i + nodes.first < s.nx; i += nodes.stride)
      for (std::size_t j = nodes.first; j + nodes.first < s.ny; j += nodes.stride)
        residual = std::max(residual, std::abs(h_phi.at(i, j) - lambda * field.at(i, j)));
    const double x_reach = std::max(std::abs(s.x_min), std::abs(s.x_max));
    const double amplification =
        1.0 / (s.hx() * s.hy()) + b * s.y_max / s.hy() + (1.0 - b) * x_reach / s.hx() + std::abs(z);
    rows.emplace_back(std::max(s.hx(), s.hy()), residual);
    floors.push_back(noise * amplification);
  }
  std::size_t clean = 0;
  while (clean < rows.size() && rows[clean].second > 10.0 * floors[clean]) ++clean;
  if (clean < 3) {
    throw Error(ErrorKind::evaluator_noise_dominates,
                "residual reaches the evaluator noise floor " + std::to_string(floors.back()) + " after " +
                    std::to_string(clean) + " grids");
  }
  ResidualReport report = estimate_order(std::vector<std::pair<double, double>>(rows.begin(), rows.begin() + clean));
  report.spacings.clear();
  report.residual_norms.clear();
  for (const auto& [h, r] : rows) {
    report.spacings.push_back(h);
    report.residual_norms.push_back(r);
  }
  report.noise_floor = floors.back();
  return report;
}

ResidualReport eigen_residual(const FieldFunction& phi, Complex z, BetaParam beta, const std::vector<GridSpec>& ladder,
                              unsigned jobs) {
  return eigen_residual(
      NoisyFieldFunction([&phi](HalfPlanePoint p) {
        QuadratureResult r;
        r.value = phi(p.x, p.y);
        r.converged = true;
        return r;
      }),
      z, beta, ladder, jobs);
}

ResidualReport integrand_pde_residuals(BetaParam beta, IntegrandKind which, const IntegrandSample& sample,
                                       const EnvelopeFunction& g, const std::vector<double>& step_ladder) {
  const double b = beta.value;
  const double x = sample.p.x, y = sample.p.y, s = sample.s;
  auto G = [&](double xx, double yy, double ss) {
    return which == IntegrandKind::G0 ? eval_G0({xx, yy}, ss, beta, g) : eval_G1({xx, yy}, ss, sample.theta, beta, g);
  };
  std::vector<std::pair<double, double>> ladder;
  for (double h : step_ladder) {
    if (!(h > 0.0)) throw Error(ErrorKind::precondition, "steps must be positive");
    if (y - h < 0.0) throw Error(ErrorKind::margin, "stencil leaves the half-plane y >= 0");
    if (which == IntegrandKind::G0 && !(s - h > 0.0)) throw Error(ErrorKind::margin, "stencil reaches t <= 0");
    if (which == IntegrandKind::G1 && !(s - h > 0.0 && s + h < 1.0))
      throw Error(ErrorKind::margin, "stencil leaves 0 < u < 1");
    const Complex centre = G(x, y, s);
    const Complex dx = (G(x + h, y, s) - G(x - h, y, s)) / (2.0 * h);
    const Complex dy = (G(x, y + h, s) - G(x, y - h, s)) / (2.0 * h);
    const Complex dxy = (G(x + h, y + h, s) - G(x + h, y - h, s) - G(x - h, y + h, s) + G(x - h, y - h, s)) / (4.0 * h * h);
    const Complex lhs = dxy + kI * b * y * dy + kI * (1.0 - b) * x * dx;
    Complex residual;
    if (which == IntegrandKind::G0) {
      const Complex dt = (G(x, y, s + h) - G(x, y, s - h)) / (2.0 * h);
      residual = lhs - kI * s * dt;
    } else {
      auto flux = [&](double u) { return u * (1.0 - u) * G(x, y, u); };
      const Complex du = (flux(s + h) - flux(s - h)) / (2.0 * h);
      residual = lhs - kI * du + kI * sample.theta * centre;
    }
    ladder.emplace_back(h, std::abs(residual));
  }
  return estimate_order(ladder);
}

FluxField flux_field(const GridField& phi, const GridField& psi, BetaParam beta) {
  const GridSpec& s = phi.spec();
  require_interior(s, 1);
  const double b = beta.value;
  FluxField out{GridField(s), GridField(s)};
  for (std::size_t i = 1; i + 1 < s.nx; ++i) {
    for (std::size_t j = 1; j + 1 < s.ny; ++j) {
      const Derivatives dp = stencil(phi, i, j);
      const Derivatives dq = stencil(psi, i, j);
      const Complex pc = std::conj(phi.at(i, j));
      const Complex q = psi.at(i, j);
      out.j1.at(i, j) = 0.5 * (std::conj(dp.dy) * q - pc * dq.dy) - kI * (1.0 - b) * s.x(i) * pc * q;
      out.j2.at(i, j) = 0.5 * (std::conj(dp.dx) * q - pc * dq.dx) - kI * b * s.y(j) * pc * q;
    }
  }
  return out;
}

ResidualReport flux_identity_residual(const FieldFunction& phi, const FieldFunction& psi, BetaParam beta,
                                      const std::vector<GridSpec>& ladder, ConstantTerm constant) {
  std::vector<std::pair<double, double>> rows;
  for (const GridSpec& s : ladder) {
    require_interior(s, 2);
    const GridField f = GridField::sample(s, phi, 1);
    const GridField g = GridField::sample(s, psi, 1);
    const GridField hf = apply_H(f, beta, constant);
    const GridField hg = apply_H(g, beta, constant);
    const FluxField J = flux_field(f, g, beta);
    double residual = 0.0;
    const detail::NodeSelection nodes = detail::shared_nodes(ladder.front(), s, 2);
    for (std::size_t i = nodes.first; i + nodes.first < s.nx; i += nodes.stride) {
      for (std::size_t j = nodes.first; j + nodes.first < s.ny; j += nodes.stride) {
        const Complex lhs = std::conj(hf.at(i, j)) * g.at(i, j) - std::conj(f.at(i, j)) * hg.at(i, j);
        const Complex divergence = (J.j1.at(i + 1, j) - J.j1.at(i - 1, j)) / (2.0 * s.hx()) +
                                   (J.j2.at(i, j + 1) - J.j2.at(i, j - 1)) / (2.0 * s.hy());
        residual = std::max(residual, std::abs(lhs - divergence));
      }
    }
    rows.emplace_back(std::max(s.hx(), s.hy()), residual);
  }
  return estimate_order(rows);
}

}  // namespace zetalab
