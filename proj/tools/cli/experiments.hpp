#ifndef ZETALAB_CLI_EXPERIMENTS_HPP
#define ZETALAB_CLI_EXPERIMENTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace zetalab::cli {

struct Settings {
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::optional<long> max_evals;
  std::optional<double> check_tol;  // replaces the bound of every "<=" check

  /// `base` with the overrides applied.
  ToleranceSpec tolerance(ToleranceSpec base) const;
  Json to_json() const;
  static Settings from_json(const Json& j);
};

struct Context {
  Settings settings;
  unsigned jobs = 1;
  std::function<void(const CheckRecord&)> on_check;  // progress hook, may be empty
};

struct Command {
  std::string name;
  std::string help;
  Schema schema;
  /// Cross-parameter validation; throws UsageError.
  std::function<void(const Json& params)> validate;
  std::function<std::vector<CheckRecord>(const Json& params, const Context& ctx)> run;
};

/// Every command in suite order, followed by `suite` itself.
const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

}  // namespace zetalab::cli

#endif
