#include <cmath>

#include "zetalab/hamiltonian.hpp"

namespace zetalab {

GridSpec GridSpec::make(double x_min, double x_max, double y_min, double y_max, std::size_t nx, std::size_t ny) {
  if (nx < 5 || ny < 5) throw Error(ErrorKind::grid_too_small, "grids need at least 5 nodes per axis");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
    throw Error(ErrorKind::precondition, "grid window must be finite");
  if (!(x_min < x_max) || !(y_min < y_max)) throw Error(ErrorKind::precondition, "grid window is empty");
  if (y_min < 0.0) throw Error(ErrorKind::precondition, "grids live in the half-plane y >= 0");
  return GridSpec{x_min, x_max, y_min, y_max, nx, ny};
}

GridSpec GridSpec::refined() const {
  return GridSpec{x_min, x_max, y_min, y_max, 2 * nx - 1, 2 * ny - 1};
}

std::vector<GridSpec> refinement_ladder(const GridSpec& coarse, std::size_t levels) {
  std::vector<GridSpec> out{GridSpec::make(coarse.x_min, coarse.x_max, coarse.y_min, coarse.y_max, coarse.nx, coarse.ny)};
  while (out.size() < levels) out.push_back(out.back().refined());
  return out;
}

GridField::GridField(GridSpec spec) : spec_(spec), values_(spec.nx * spec.ny) {}

GridField GridField::sample(const GridSpec& spec, const FieldFunction& f, unsigned jobs) {
  GridField out(spec);
  parallel_for(
      spec.nx,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < spec.ny; ++j) {
          const Complex v = f(spec.x(i), spec.y(j));
          if (!is_finite(v)) throw Error(ErrorKind::non_finite_sample, "field sample is not finite");
          out.at(i, j) = v;
        }
      },
      jobs);
  return out;
}

double interior_sup_norm(const GridField& field, std::size_t margin) {
  const GridSpec& s = field.spec();
  if (s.nx <= 2 * margin || s.ny <= 2 * margin) throw Error(ErrorKind::grid_too_small, "no interior nodes");
  double out = 0.0;
  for (std::size_t i = margin; i + margin < s.nx; ++i)
    for (std::size_t j = margin; j + margin < s.ny; ++j) out = std::max(out, std::abs(field.at(i, j)));
  return out;
}

}  // namespace zetalab
