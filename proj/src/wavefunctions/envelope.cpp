#include <algorithm>
#include <cmath>

#include "zetalab/detail/contour.hpp"
#include "zetalab/wavefunctions.hpp"

namespace zetalab {

BetaParam BetaParam::make(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::precondition, "beta must lie in [0, 1]");
  return BetaParam{beta};
}

void BetaParam::require_open() const {
  if (!(value > 0.0 && value < 1.0)) throw Error(ErrorKind::precondition, "decay bounds need 0 < beta < 1");
}

HalfPlanePoint HalfPlanePoint::make(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::precondition, "point must be finite");
  if (y < 0.0) throw Error(ErrorKind::precondition, "points live in the half-plane y >= 0");
  return HalfPlanePoint{x, y};
}

EnvelopeSpec EnvelopeSpec::sampled(const std::vector<double>& xi, const std::vector<double>& g) {
  if (xi.size() != g.size() || xi.size() < 2)
    throw Error(ErrorKind::precondition, "sampled envelope needs matching node and value lists of length >= 2");
  if (xi.front() != 0.0) throw Error(ErrorKind::precondition, "sampled envelope must start at xi = 0");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!std::isfinite(xi[i]) || !std::isfinite(g[i])) throw Error(ErrorKind::precondition, "non-finite envelope sample");
    if (i > 0 && !(xi[i] > xi[i - 1])) throw Error(ErrorKind::precondition, "envelope nodes must increase");
  }
  if (g.back() != 0.0) throw Error(ErrorKind::precondition, "sampled envelope must reach 0 at its last node");
  std::vector<double> params;
  params.reserve(2 * xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    params.push_back(xi[i]);
    params.push_back(g[i]);
  }
  return EnvelopeSpec(EnvelopeKind::sampled, std::move(params));
}

std::string_view EnvelopeSpec::name() const noexcept {
  switch (kind_) {
    case EnvelopeKind::fermi: return "fermi";
    case EnvelopeKind::exponential: return "exponential";
    case EnvelopeKind::gaussian: return "gaussian";
    case EnvelopeKind::sampled: return "sampled";
  }
  return "unknown";
}

Complex EnvelopeSpec::operator()(Complex xi) const {
  switch (kind_) {
    case EnvelopeKind::fermi: return detail::fermi_factor(xi);
    case EnvelopeKind::exponential: return std::exp(-xi);
    case EnvelopeKind::gaussian: return std::exp(-xi * xi);
    case EnvelopeKind::sampled: {
      if (xi.imag() != 0.0) throw Error(ErrorKind::domain, "sampled envelope is defined on the real axis only");
      const double s = xi.real();
      const std::size_t n = parameters_.size() / 2;
      if (s <= parameters_[0]) return parameters_[1];
      if (s >= parameters_[2 * (n - 1)]) return 0.0;
      std::size_t lo = 0, hi = n - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (parameters_[2 * mid] <= s ? lo : hi) = mid;
      }
      const double x0 = parameters_[2 * lo], x1 = parameters_[2 * hi];
      const double w = (s - x0) / (x1 - x0);
      return (1.0 - w) * parameters_[2 * lo + 1] + w * parameters_[2 * hi + 1];
    }
  }
  return 0.0;
}

double EnvelopeSpec::max_sector_angle() const noexcept {
  switch (kind_) {
    case EnvelopeKind::fermi:
    case EnvelopeKind::exponential: return kPi / 2 - 0.05;
    case EnvelopeKind::gaussian: return kPi / 4 - 0.05;
    case EnvelopeKind::sampled: return 0.0;
  }
  return 0.0;
}

ScaleWeightSpec ScaleWeightSpec::sampled(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw Error(ErrorKind::precondition, "sampled weight needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || !std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
      throw Error(ErrorKind::precondition, "weight samples need finite k > 0");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      throw Error(ErrorKind::precondition, "weight samples must increase in k");
  }
  return ScaleWeightSpec(std::move(samples));
}

double ScaleWeightSpec::operator()(double k) const {
  if (is_unit()) return 1.0;
  if (k < samples_.front().first || k > samples_.back().first) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), k,
                                   [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it == samples_.end()) return samples_.back().second;
  const auto& [k1, f1] = *it;
  const auto& [k0, f0] = *(it - 1);
  const double w = std::log(k / k0) / std::log(k1 / k0);
  return (1.0 - w) * f0 + w * f1;
}

Complex eval_G0(HalfPlanePoint p, double t, BetaParam beta, const EnvelopeFunction& g) {
  if (!(t > 0.0)) throw Error(ErrorKind::precondition, "G0 needs t > 0");
  const double b = beta.value;
  const Complex phase = std::polar(1.0, p.x * std::pow(t, 1.0 - b));
  return require_finite(phase * g(t + p.y * std::pow(t, b)), "G0");
}

Complex eval_G1(HalfPlanePoint p, double u, Complex theta, BetaParam beta, const EnvelopeFunction& g) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::precondition, "G1 needs 0 < u < 1");
  const double v = 1.0 - u;
  const double b = beta.value;
  const Complex prefactor = std::exp((theta - 1.0) * std::log(u) - theta * std::log(v));
  const double xi = p.y * std::pow(u, b) * std::pow(v, 1.0 - b);
  return require_finite(prefactor * std::polar(1.0, -u * p.x * p.y) * g(xi), "G1");
}

HalfPlanePoint boost(HalfPlanePoint p, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::precondition, "boost needs k > 0");
  return HalfPlanePoint{p.x / k, k * p.y};
}

std::string_view to_string(DecayRay ray) {
  switch (ray) {
    case DecayRay::x_axis: return "x-axis";
    case DecayRay::y_axis: return "y-axis";
    case DecayRay::diagonal: return "diagonal";
  }
  return "unknown";
}

}  // namespace zetalab
