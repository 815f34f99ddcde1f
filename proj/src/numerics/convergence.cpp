#include <cmath>

#include "zetalab/numerics.hpp"

namespace zetalab {

ResidualReport estimate_order(std::span<const std::pair<double, double>> ladder) {
  if (ladder.size() < 3) throw Error(ErrorKind::degenerate_ladder, "need at least three ladder entries");
  ResidualReport report;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto [h, r] = ladder[i];
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::degenerate_ladder, "spacings must be positive");
    if (i > 0 && !(h < ladder[i - 1].first))
      throw Error(ErrorKind::degenerate_ladder, "spacings must be strictly decreasing");
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::degenerate_ladder, "residuals must be finite and >= 0");
    if (r == 0.0) ++zeros;
    report.spacings.push_back(h);
    report.residual_norms.push_back(r);
  }
  if (zeros == ladder.size()) {
    report.exact_match = true;
    return report;
  }
  if (zeros > 0) throw Error(ErrorKind::degenerate_ladder, "ladder mixes zero and non-zero residuals");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ladder.size());
  for (const auto& [h, r] : ladder) {
    const double lx = std::log(h), ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  report.estimated_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

}  // namespace zetalab
