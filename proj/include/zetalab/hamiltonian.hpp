#ifndef ZETALAB_HAMILTONIAN_HPP
#define ZETALAB_HAMILTONIAN_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "zetalab/numerics.hpp"
#include "zetalab/wavefunctions.hpp"

namespace zetalab {

/// Uniform grid on [x_min, x_max] x [y_min, y_max] with nx x ny nodes.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t nx = 5;
  std::size_t ny = 5;

  /// GridTooSmall below 5 nodes per axis; PreconditionError on an empty or
  /// inverted window or y_min < 0.
  static GridSpec make(double x_min, double x_max, double y_min, double y_max, std::size_t nx, std::size_t ny);

  double hx() const noexcept { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double hy() const noexcept { return (y_max - y_min) / static_cast<double>(ny - 1); }
  double x(std::size_t i) const noexcept { return x_min + hx() * static_cast<double>(i); }
  double y(std::size_t j) const noexcept { return y_min + hy() * static_cast<double>(j); }

  /// Same window with both spacings halved; nodes of this grid stay nodes.
  GridSpec refined() const;
};

/// `levels` grids starting at `coarse`, each a refinement of the previous.
std::vector<GridSpec> refinement_ladder(const GridSpec& coarse, std::size_t levels);

using FieldFunction = std::function<Complex(double x, double y)>;
using NoisyFieldFunction = std::function<QuadratureResult(HalfPlanePoint)>;

class GridField {
 public:
  explicit GridField(GridSpec spec);
  /// Samples f at every node; non-finite values raise NonFiniteSample.
  static GridField sample(const GridSpec& spec, const FieldFunction& f, unsigned jobs = 0);

  const GridSpec& spec() const noexcept { return spec_; }
  Complex& at(std::size_t i, std::size_t j) { return values_[i * spec_.ny + j]; }
  Complex at(std::size_t i, std::size_t j) const { return values_[i * spec_.ny + j]; }

 private:
  GridSpec spec_;
  std::vector<Complex> values_;
};

struct FluxField {
  GridField j1;
  GridField j2;
};

enum class ConstantTerm { included, dropped };

/// H phi with the cross stencil for d^2/dxdy and central first derivatives.
/// The boundary ring is left at zero and excluded from every norm below.
GridField apply_H(const GridField& phi, BetaParam beta, ConstantTerm constant = ConstantTerm::included);

/// Sup norm over nodes at least `margin` cells from the boundary.
double interior_sup_norm(const GridField& field, std::size_t margin = 1);

/// sup |H phi - lambda phi| with lambda = (z - 1/2)/i on each grid, i.e. the
/// residual of {d^2/dxdy + i beta y d/dy + i (1-beta) x d/dx} phi = -i z phi.
/// When the ladder nests, the sup runs over the coarse grid's interior nodes
/// on every level, so each level measures the same points.
/// For noisy evaluators the floor is the sampled error amplified by the
/// stencil; the order is fitted on the levels above 10x the floor, and fewer
/// than three such levels raise EvaluatorNoiseDominates.
ResidualReport eigen_residual(const NoisyFieldFunction& phi, Complex z, BetaParam beta,
                              const std::vector<GridSpec>& ladder, unsigned jobs = 0);
ResidualReport eigen_residual(const FieldFunction& phi, Complex z, BetaParam beta,
                              const std::vector<GridSpec>& ladder, unsigned jobs = 0);

enum class IntegrandKind { G0, G1 };

struct IntegrandSample {
  HalfPlanePoint p;
  double s = 1.0;          // t for G0, u in (0, 1) for G1
  Complex theta{0.5, 0.0};  // G1 only
};

/// Finite-difference residual of the integrand identities at one sample:
///   G0: {d^2/dxdy + i beta y d/dy + i (1-beta) x d/dx} G0 = i t dG0/dt
///   G1: {same operator} G1 - i d/du [u (1-u) G1] = -i theta G1
/// The envelope may be any analytic function; no decay is needed.
/// MarginError when a stencil would leave y >= 0, t > 0 or 0 < u < 1.
ResidualReport integrand_pde_residuals(BetaParam beta, IntegrandKind which, const IntegrandSample& sample,
                                       const EnvelopeFunction& g, const std::vector<double>& step_ladder);

/// J1, J2 of the flux identity, by central differences on the interior.
FluxField flux_field(const GridField& phi, const GridField& psi, BetaParam beta);

/// sup |conj(H phi) psi - conj(phi) H psi - (dJ1/dx + dJ2/dy)| two coarse
/// cells in from the boundary, on each grid of the ladder.
ResidualReport flux_identity_residual(const FieldFunction& phi, const FieldFunction& psi, BetaParam beta,
                                      const std::vector<GridSpec>& ladder,
                                      ConstantTerm constant = ConstantTerm::included);

struct HermiticityDefect {
  Complex value{};       // <H phi|psi> - <phi|H psi>, trapezoid rule
  double constant = 0.0;  // |value| / ((hx^2 + hy^2) ||phi|| ||psi||)
};

/// BoundaryViolation when either field exceeds 1e-12 on any grid edge.
HermiticityDefect hermiticity_defect(const GridField& phi, const GridField& psi, BetaParam beta);

/// d^2 f/dxdy + (x y / 4) f by the same stencils as apply_H.
Complex conjugated_operator(const FieldFunction& f, double x, double y, double h);

/// (1/4)(d^2/du^2 - d^2/dv^2 + u^2 - v^2) F at (u, v), F(u, v) = f(u - v, u + v).
Complex anti_oscillator(const FieldFunction& f, double u, double v, double h);

struct TransformCheck {
  ResidualReport conjugation;     // e^{ixy/2} H e^{-ixy/2} f vs d^2f/dxdy + (xy/4) f
  ResidualReport light_cone;      // (x, y) form vs (u, v) form at the same points
};

/// beta = 1/2 transform chain on the interior nodes of each grid.
TransformCheck beta_half_transform_check(const FieldFunction& f, const std::vector<GridSpec>& ladder);

/// xi^{2z} / (xi^2 + 1) exp(-i x xi / 2) with xi = y + sqrt(1 + y^2).
Complex peculiar_solution(HalfPlanePoint p, Complex z);

}  // namespace zetalab

#endif  // ZETALAB_HAMILTONIAN_HPP
