#include "report.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace zetalab::cli {
namespace {

std::string csv_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buffer[40];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

Json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

void flatten(std::ostringstream& out, const std::string& check, const std::string& field, const Json& value) {
  const std::string prefix = csv_quote(check) + "," + csv_quote(field) + ",";
  if (value.is_object() && value.size() == 2 && value.contains("re") && value.contains("im")) {
    out << prefix << csv_number(value["re"].get<double>()) << "," << csv_number(value["im"].get<double>()) << "\n";
  } else if (value.is_object()) {
    for (const auto& [key, item] : value.items()) flatten(out, check, field + "." + key, item);
  } else if (value.is_array()) {
    for (std::size_t k = 0; k < value.size(); ++k) flatten(out, check, field + "[" + std::to_string(k) + "]", value[k]);
  } else if (value.is_number()) {
    out << prefix << csv_number(value.get<double>()) << ",\n";
  } else if (value.is_boolean()) {
    out << prefix << (value.get<bool>() ? 1 : 0) << ",\n";
  } else if (value.is_string()) {
    out << prefix << csv_quote(value.get<std::string>()) << ",\n";
  }
}

}  // namespace

const char* const kVersion = "zetalab 0.1.0";

bool CheckRecord::passed() const {
  if (!error.empty() || std::isnan(value)) return false;
  switch (relation) {
    case Relation::at_most: return value <= upper;
    case Relation::at_least: return value >= lower;
    case Relation::within: return value >= lower && value <= upper;
  }
  return false;
}

std::size_t Report::pass_count() const {
  std::size_t n = 0;
  for (const CheckRecord& c : checks) n += c.passed() ? 1 : 0;
  return n;
}

std::size_t Report::fail_count() const { return checks.size() - pass_count(); }

bool Report::any_budget_error() const {
  for (const CheckRecord& c : checks)
    if (c.budget_error) return true;
  return false;
}

int Report::exit_code() const {
  if (any_budget_error()) return 3;
  return fail_count() == 0 ? 0 : 1;
}

std::string fingerprint(const Json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::at_most: return "<=";
    case Relation::at_least: return ">=";
    case Relation::within: return "in";
  }
  return "?";
}

Json to_json(const Report& report) {
  Json checks = Json::array();
  for (const CheckRecord& c : report.checks) {
    Json tolerance;
    switch (c.relation) {
      case Relation::at_most: tolerance = number_or_string(c.upper); break;
      case Relation::at_least: tolerance = number_or_string(c.lower); break;
      case Relation::within: tolerance = Json::array({number_or_string(c.lower), number_or_string(c.upper)}); break;
    }
    Json record{{"name", c.name},
                {"value", number_or_string(c.value)},
                {"relation", to_string(c.relation)},
                {"tolerance", tolerance},
                {"pass", c.passed()},
                {"error_estimate", number_or_string(c.error_estimate)},
                {"details", c.details}};
    if (!c.error.empty()) record["error"] = c.error;
    record["runtime_ms"] = std::round(c.runtime_ms * 1000.0) / 1000.0;
    checks.push_back(std::move(record));
  }
  return Json{{"version", kVersion},
              {"fingerprint", fingerprint(report.config)},
              {"config", report.config},
              {"checks", checks},
              {"summary",
               {{"pass", report.pass_count()}, {"fail", report.fail_count()}, {"exit_code", report.exit_code()}}}};
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "check,field,re,im\n";
  out << "report,version," << csv_quote(kVersion) << ",\n";
  out << "report,fingerprint," << fingerprint(report.config) << ",\n";
  flatten(out, "report", "config", report.config);
  for (const CheckRecord& c : report.checks) {
    out << csv_quote(c.name) << ",value," << csv_number(c.value) << ",\n";
    out << csv_quote(c.name) << ",relation," << to_string(c.relation) << ",\n";
    if (c.relation != Relation::at_most) out << csv_quote(c.name) << ",lower," << csv_number(c.lower) << ",\n";
    if (c.relation != Relation::at_least) out << csv_quote(c.name) << ",upper," << csv_number(c.upper) << ",\n";
    out << csv_quote(c.name) << ",pass," << (c.passed() ? 1 : 0) << ",\n";
    out << csv_quote(c.name) << ",error_estimate," << csv_number(c.error_estimate) << ",\n";
    if (!c.error.empty()) out << csv_quote(c.name) << ",error," << csv_quote(c.error) << ",\n";
    flatten(out, c.name, "details", c.details);
    out << csv_quote(c.name) << ",runtime_ms," << csv_number(std::round(c.runtime_ms * 1000.0) / 1000.0) << ",\n";
  }
  out << "report,pass," << report.pass_count() << ",\n";
  out << "report,fail," << report.fail_count() << ",\n";
  out << "report,exit_code," << report.exit_code() << ",\n";
  return out.str();
}

}  // namespace zetalab::cli
