#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "zetalab/numerics.hpp"

namespace zetalab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::pole: return "PoleError";
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::non_finite_sample: return "NonFiniteSample";
    case ErrorKind::slow_decay: return "SlowDecay";
    case ErrorKind::degenerate_ladder: return "DegenerateLadder";
    case ErrorKind::prefactor_singular: return "PrefactorSingular";
    case ErrorKind::window_too_wide: return "WindowTooWide";
    case ErrorKind::slow_convergence: return "SlowConvergence";
    case ErrorKind::margin: return "MarginError";
    case ErrorKind::grid_too_small: return "GridTooSmall";
    case ErrorKind::boundary_violation: return "BoundaryViolation";
    case ErrorKind::evaluator_noise_dominates: return "EvaluatorNoiseDominates";
    case ErrorKind::precondition: return "PreconditionError";
    case ErrorKind::log_divergence: return "LogDivergence";
    case ErrorKind::oscillatory_budget: return "OscillatoryBudget";
    case ErrorKind::overflow: return "OverflowError";
  }
  return "Error";
}

bool is_finite(Complex value) noexcept {
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

Complex require_finite(Complex value, const char* context) {
  if (!is_finite(value)) throw Error(ErrorKind::overflow, std::string(context) + " produced a non-finite value");
  return value;
}

void ToleranceSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw Error(ErrorKind::precondition, "tolerances must be positive");
  if (max_evaluations < 1) throw Error(ErrorKind::precondition, "max_evaluations must be at least 1");
}

double ToleranceSpec::target(double magnitude) const noexcept {
  return std::max(abs_tol, rel_tol * magnitude);
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  abs_error_estimate += other.abs_error_estimate;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  // Static striping keeps the index-to-thread assignment fixed.
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace zetalab
