#ifndef ZETALAB_CLI_REPORT_HPP
#define ZETALAB_CLI_REPORT_HPP

#include <string>
#include <vector>

#include "params.hpp"

namespace zetalab::cli {

enum class Relation { at_most, at_least, within };

struct CheckRecord {
  std::string name;
  double value = 0.0;
  Relation relation = Relation::at_most;
  double lower = 0.0;  // at_least and within
  double upper = 0.0;  // at_most and within
  double error_estimate = 0.0;
  double runtime_ms = 0.0;
  Json details = Json::object();
  std::string error;        // set when the computation threw
  bool budget_error = false;

  /// Derived from value, relation and bounds only; any error fails.
  bool passed() const;
};

struct Report {
  Json config;  // command, parameters and global settings, re-runnable as is
  std::vector<CheckRecord> checks;

  std::size_t pass_count() const;
  std::size_t fail_count() const;
  bool any_budget_error() const;
  /// 0 all pass, 3 any budget error, 1 otherwise.
  int exit_code() const;
};

extern const char* const kVersion;

/// FNV-1a over the compact dump of the config.
std::string fingerprint(const Json& config);

Json to_json(const Report& report);
/// Long format: one row per (check, field); complex fields fill re and im.
std::string to_csv(const Report& report);

std::string to_string(Relation r);

}  // namespace zetalab::cli

#endif
