#ifndef ZETALAB_ERROR_HPP
#define ZETALAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetalab {

enum class ErrorKind {
  pole,
  domain,
  budget_exceeded,
  non_finite_sample,
  slow_decay,
  degenerate_ladder,
  prefactor_singular,
  window_too_wide,
  slow_convergence,
  margin,
  grid_too_small,
  boundary_violation,
  evaluator_noise_dominates,
  precondition,
  log_divergence,
  oscillatory_budget,
  overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Budget-class failures: the computation was well posed but ran out of
// evaluations, panels or truncation range.
constexpr bool is_budget_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::budget_exceeded:
    case ErrorKind::slow_decay:
    case ErrorKind::slow_convergence:
    case ErrorKind::oscillatory_budget:
    case ErrorKind::evaluator_noise_dominates:
    case ErrorKind::window_too_wide:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zetalab

#endif  // ZETALAB_ERROR_HPP
