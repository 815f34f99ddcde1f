#include <algorithm>
#include <cmath>
#include <string>

#include "zetalab/detail/grid_nodes.hpp"
#include "zetalab/hamiltonian.hpp"

namespace zetalab {
namespace {

constexpr double kEdgeTolerance = 1e-12;

void require_vanishing_edges(const GridField& f, const char* name) {
  const GridSpec& s = f.spec();
  for (std::size_t i = 0; i < s.nx; ++i)
    for (std::size_t j = 0; j < s.ny; ++j) {
      const bool edge = i == 0 || j == 0 || i + 1 == s.nx || j + 1 == s.ny;
      if (edge && std::abs(f.at(i, j)) > kEdgeTolerance)
        throw Error(ErrorKind::boundary_violation, std::string(name) + " does not vanish on the grid edge");
    }
}

// Trapezoid weight of node (i, j), including the cell area.
double trapezoid_weight(const GridSpec& s, std::size_t i, std::size_t j) {
  const double wx = (i == 0 || i + 1 == s.nx) ? 0.5 : 1.0;
  const double wy = (j == 0 || j + 1 == s.ny) ? 0.5 : 1.0;
  return wx * wy * s.hx() * s.hy();
}

double l2_norm(const GridField& f) {
  const GridSpec& s = f.spec();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.nx; ++i)
    for (std::size_t j = 0; j < s.ny; ++j) sum += trapezoid_weight(s, i, j) * std::norm(f.at(i, j));
  return std::sqrt(sum);
}

}  // namespace

HermiticityDefect hermiticity_defect(const GridField& phi, const GridField& psi, BetaParam beta) {
  const GridSpec& s = phi.spec();
  if (psi.spec().nx != s.nx || psi.spec().ny != s.ny) throw Error(ErrorKind::precondition, "fields need one grid");
  require_vanishing_edges(phi, "phi");
  require_vanishing_edges(psi, "psi");
  const GridField h_phi = apply_H(phi, beta);
  const GridField h_psi = apply_H(psi, beta);
  HermiticityDefect out;
  for (std::size_t i = 0; i < s.nx; ++i)
    for (std::size_t j = 0; j < s.ny; ++j)
      out.value += trapezoid_weight(s, i, j) *
                   (std::conj(h_phi.at(i, j)) * psi.at(i, j) - std::conj(phi.at(i, j)) * h_psi.at(i, j));
  const double norms = l2_norm(phi) * l2_norm(psi);
  const double h2 = s.hx() * s.hx() + s.hy() * s.hy();
  out.constant = norms > 0.0 ? std::abs(out.value) / (h2 * norms) : 0.0;
  return out;
}

Complex conjugated_operator(const FieldFunction& f, double x, double y, double h) {
  const Complex dxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
  return dxy + 0.25 * x * y * f(x, y);
}

Complex anti_oscillator(const FieldFunction& f, double u, double v, double h) {
  auto F = [&f](double uu, double vv) { return f(uu - vv, uu + vv); };
  const Complex centre = F(u, v);
  const Complex duu = (F(u + h, v) - 2.0 * centre + F(u - h, v)) / (h * h);
  const Complex dvv = (F(u, v + h) - 2.0 * centre + F(u, v - h)) / (h * h);
  return 0.25 * (duu - dvv + (u * u - v * v) * centre);
}

TransformCheck beta_half_transform_check(const FieldFunction& f, const std::vector<GridSpec>& ladder) {
  const BetaParam half = BetaParam::make(0.5);
  std::vector<std::pair<double, double>> conjugation, light_cone;
  for (const GridSpec& s : ladder) {
    const GridField plain = GridField::sample(s, f, 1);
    const GridField twisted = GridField::sample(s, [&f](double x, double y) { return std::polar(1.0, -0.5 * x * y) * f(x, y); }, 1);
    const GridField h_twisted = apply_H(twisted, half);
    const double hx = s.hx(), hy = s.hy();
    double worst_conj = 0.0, worst_cone = 0.0;
    const detail::NodeSelection nodes = detail::shared_nodes(ladder.front(), s, 1);
    for (std::size_t i = nodes.first; i + nodes.first < s.nx; i += nodes.stride) {
      for (std::size_t j = nodes.first; j + nodes.first < s.ny; j += nodes.stride) {
        const double x = s.x(i), y = s.y(j);
        const Complex dxy = (plain.at(i + 1, j + 1) - plain.at(i + 1, j - 1) - plain.at(i - 1, j + 1) +
                             plain.at(i - 1, j - 1)) / (4.0 * hx * hy);
        const Complex target = dxy + 0.25 * x * y * plain.at(i, j);
        worst_conj = std::max(worst_conj, std::abs(std::polar(1.0, 0.5 * x * y) * h_twisted.at(i, j) - target));
        const Complex in_xy = conjugated_operator(f, x, y, hx);
        // With equal steps the (u, v) second differences reproduce the cross
        // stencil node for node, so the light-cone side uses half the step.
        const Complex in_uv = anti_oscillator(f, 0.5 * (x + y), 0.5 * (y - x), 0.5 * hx);
        worst_cone = std::max(worst_cone, std::abs(in_xy - in_uv));
      }
    }
    conjugation.emplace_back(std::max(hx, hy), worst_conj);
    light_cone.emplace_back(hx, worst_cone);
  }
  return TransformCheck{estimate_order(conjugation), estimate_order(light_cone)};
}

Complex peculiar_solution(HalfPlanePoint p, Complex z) {
  const double xi = p.y + std::hypot(1.0, p.y);
  return std::exp(2.0 * z * std::log(xi)) / (xi * xi + 1.0) * std::polar(1.0, -0.5 * p.x * xi);
}

}  // namespace zetalab
