#ifndef ZETALAB_CLI_PARAMS_HPP
#define ZETALAB_CLI_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zetalab/numerics.hpp"

namespace zetalab::cli {

using Json = nlohmann::ordered_json;

/// Raised for anything that should end in exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "a+bi", "a-bi", "a", "bi", "-i". Whitespace is not allowed.
std::optional<Complex> parse_complex(const std::string& text);
std::string format_complex(Complex z);

Json complex_json(Complex z);
/// Accepts {"re": a, "im": b}, a number or an "a+bi" string.
Complex complex_from_json(const Json& j);

enum class ParamType { real, integer, complex, text, real_list, complex_list, flag };

struct ParamSpec {
  std::string name;  // flag name without dashes
  ParamType type = ParamType::real;
  Json default_value;              // null means "not set"
  std::string help;
  std::vector<std::string> choices;  // text parameters only
  std::optional<double> min;         // real and integer parameters, list elements
  std::optional<double> max;
};

using Schema = std::vector<ParamSpec>;

/// Canonical JSON for one raw command-line string; UsageError when malformed.
Json parse_param(const ParamSpec& spec, const std::string& raw);

/// Fills defaults, converts every value to canonical JSON and checks ranges.
/// Unknown keys raise UsageError.
Json resolve_params(const Schema& schema, const Json& given);

double real_param(const Json& params, const std::string& name);
long integer_param(const Json& params, const std::string& name);
Complex complex_param(const Json& params, const std::string& name);
std::string text_param(const Json& params, const std::string& name);
std::vector<double> real_list_param(const Json& params, const std::string& name);
std::vector<Complex> complex_list_param(const Json& params, const std::string& name);
bool flag_param(const Json& params, const std::string& name);
bool has_param(const Json& params, const std::string& name);

}  // namespace zetalab::cli

#endif
