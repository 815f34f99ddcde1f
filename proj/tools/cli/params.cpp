#include "params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace zetalab::cli {
namespace {

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_real(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
  return parts;
}

std::string type_name(ParamType t) {
  switch (t) {
    case ParamType::real: return "real";
    case ParamType::integer: return "integer";
    case ParamType::complex: return "complex a+bi";
    case ParamType::text: return "text";
    case ParamType::real_list: return "comma-separated reals";
    case ParamType::complex_list: return "comma-separated complex values";
    case ParamType::flag: return "flag";
  }
  return "value";
}

void check_range(const ParamSpec& spec, double v) {
  if ((spec.min && v < *spec.min) || (spec.max && v > *spec.max)) {
    std::ostringstream msg;
    msg << "--" << spec.name << " must lie in [" << (spec.min ? format_real(*spec.min) : "-inf") << ", "
        << (spec.max ? format_real(*spec.max) : "inf") << "], got " << format_real(v);
    throw UsageError(msg.str());
  }
}

Json canonical(const ParamSpec& spec, const Json& value) {
  const std::string where = "--" + spec.name;
  try {
    switch (spec.type) {
      case ParamType::real: {
        if (value.is_string()) return parse_param(spec, value.get<std::string>());
        const double v = value.get<double>();
        check_range(spec, v);
        return v;
      }
      case ParamType::integer: {
        if (value.is_string()) return parse_param(spec, value.get<std::string>());
        if (!value.is_number_integer()) throw UsageError(where + " expects an integer");
        const long v = value.get<long>();
        check_range(spec, static_cast<double>(v));
        return v;
      }
      case ParamType::complex:
        return complex_json(complex_from_json(value));
      case ParamType::text: {
        const std::string v = value.get<std::string>();
        if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), v) == spec.choices.end())
          throw UsageError(where + " has no choice '" + v + "'");
        return v;
      }
      case ParamType::real_list: {
        if (value.is_string()) return parse_param(spec, value.get<std::string>());
        Json out = Json::array();
        for (const Json& item : value) {
          const double v = item.get<double>();
          check_range(spec, v);
          out.push_back(v);
        }
        if (out.empty()) throw UsageError(where + " needs at least one value");
        return out;
      }
      case ParamType::complex_list: {
        if (value.is_string()) return parse_param(spec, value.get<std::string>());
        Json out = Json::array();
        for (const Json& item : value) out.push_back(complex_json(complex_from_json(item)));
        if (out.empty()) throw UsageError(where + " needs at least one value");
        return out;
      }
      case ParamType::flag:
        return value.get<bool>();
    }
  } catch (const Json::exception&) {
    throw UsageError(where + " expects " + type_name(spec.type));
  } catch (const std::invalid_argument&) {
    throw UsageError(where + " expects " + type_name(spec.type));
  }
  return value;
}

const Json& lookup(const Json& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end() || it->is_null()) throw UsageError("missing parameter --" + name);
  return *it;
}

}  // namespace

std::optional<Complex> parse_complex(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = parse_real(text);
    return re ? std::optional<Complex>(Complex(*re, 0.0)) : std::nullopt;
  }
  const std::string body = text.substr(0, text.size() - 1);
  // The split is the last sign that is neither leading nor part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string re_text = split_at == std::string::npos ? "" : body.substr(0, split_at);
  std::string im_text = split_at == std::string::npos ? body : body.substr(split_at);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  const auto im = parse_real(im_text);
  if (!im) return std::nullopt;
  double re = 0.0;
  if (!re_text.empty()) {
    const auto parsed = parse_real(re_text);
    if (!parsed) return std::nullopt;
    re = *parsed;
  }
  return Complex(re, *im);
}

std::string format_complex(Complex z) {
  const std::string im = format_real(z.imag());
  return format_real(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_object()) return {j.at("re").get<double>(), j.at("im").get<double>()};
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) {
    const auto z = parse_complex(j.get<std::string>());
    if (!z) throw UsageError("'" + j.get<std::string>() + "' is not a complex number a+bi");
    return *z;
  }
  throw UsageError("expected a complex number");
}

Json parse_param(const ParamSpec& spec, const std::string& raw) {
  const std::string where = "--" + spec.name;
  switch (spec.type) {
    case ParamType::real: {
      const auto v = parse_real(raw);
      if (!v) throw UsageError(where + " expects a real number, got '" + raw + "'");
      check_range(spec, *v);
      return *v;
    }
    case ParamType::integer: {
      long v = 0;
      const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec != std::errc{} || end != raw.data() + raw.size())
        throw UsageError(where + " expects an integer, got '" + raw + "'");
      check_range(spec, static_cast<double>(v));
      return v;
    }
    case ParamType::complex: {
      const auto z = parse_complex(raw);
      if (!z) throw UsageError(where + " expects a complex number a+bi, got '" + raw + "'");
      return complex_json(*z);
    }
    case ParamType::text:
      return canonical(spec, Json(raw));
    case ParamType::real_list: {
      Json out = Json::array();
      for (const std::string& item : split(raw, ',')) {
        const auto v = parse_real(item);
        if (!v) throw UsageError(where + " expects comma-separated reals, got '" + raw + "'");
        check_range(spec, *v);
        out.push_back(*v);
      }
      if (out.empty()) throw UsageError(where + " needs at least one value");
      return out;
    }
    case ParamType::complex_list: {
      Json out = Json::array();
      for (const std::string& item : split(raw, ',')) {
        const auto z = parse_complex(item);
        if (!z) throw UsageError(where + " expects comma-separated complex values, got '" + raw + "'");
        out.push_back(complex_json(*z));
      }
      if (out.empty()) throw UsageError(where + " needs at least one value");
      return out;
    }
    case ParamType::flag:
      if (raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
      throw UsageError(where + " expects true or false");
  }
  return nullptr;
}

Json resolve_params(const Schema& schema, const Json& given) {
  if (!given.is_null() && !given.is_object()) throw UsageError("parameters must be a JSON object");
  if (given.is_object()) {
    for (const auto& [key, value] : given.items()) {
      const bool known = std::any_of(schema.begin(), schema.end(), [&](const ParamSpec& p) { return p.name == key; });
      if (!known) throw UsageError("unknown parameter --" + key);
    }
  }
  Json out = Json::object();
  for (const ParamSpec& spec : schema) {
    const Json* value = &spec.default_value;
    if (given.is_object() && given.contains(spec.name) && !given.at(spec.name).is_null()) value = &given.at(spec.name);
    out[spec.name] = value->is_null() ? Json(nullptr) : canonical(spec, *value);
  }
  return out;
}

double real_param(const Json& params, const std::string& name) { return lookup(params, name).get<double>(); }
long integer_param(const Json& params, const std::string& name) { return lookup(params, name).get<long>(); }
Complex complex_param(const Json& params, const std::string& name) { return complex_from_json(lookup(params, name)); }
std::string text_param(const Json& params, const std::string& name) { return lookup(params, name).get<std::string>(); }
bool flag_param(const Json& params, const std::string& name) { return lookup(params, name).get<bool>(); }

std::vector<double> real_list_param(const Json& params, const std::string& name) {
  return lookup(params, name).get<std::vector<double>>();
}

std::vector<Complex> complex_list_param(const Json& params, const std::string& name) {
  std::vector<Complex> out;
  for (const Json& item : lookup(params, name)) out.push_back(complex_from_json(item));
  return out;
}

bool has_param(const Json& params, const std::string& name) {
  const auto it = params.find(name);
  return it != params.end() && !it->is_null();
}

}  // namespace zetalab::cli
