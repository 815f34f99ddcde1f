#include <cmath>
#include <vector>

#include "zetalab/numerics.hpp"

namespace zetalab {

// Algorithm 1 of Cohen, Rodriguez Villegas and Zagier, "Convergence
// acceleration of alternating series".
Complex alternating_sum(const std::function<Complex(std::size_t)>& term, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::precondition, "alternating_sum needs at least one term");
  const double nn = static_cast<double>(n);
  double d = std::pow(3.0 + std::sqrt(8.0), nn);
  if (!std::isfinite(d)) throw Error(ErrorKind::overflow, "alternating_sum weight overflow; use fewer terms");
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  Complex s{};
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    c = b - c;
    s += c * term(k);
    b = (kk + nn) * (kk - nn) * b / ((kk + 0.5) * (kk + 1.0));
  }
  return s / d;
}

AcceleratedSum iterated_average(std::span<const Complex> partial_sums) {
  if (partial_sums.empty()) throw Error(ErrorKind::precondition, "iterated_average of an empty sequence");
  if (partial_sums.size() == 1) return {partial_sums[0], 0.0};
  std::vector<Complex> level(partial_sums.begin(), partial_sums.end());
  while (level.size() > 2) {
    for (std::size_t i = 0; i + 1 < level.size(); ++i) level[i] = 0.5 * (level[i] + level[i + 1]);
    level.pop_back();
  }
  return {0.5 * (level[0] + level[1]), 0.5 * std::abs(level[0] - level[1])};
}

}  // namespace zetalab
