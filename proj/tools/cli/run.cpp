#include "run.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "experiments.hpp"

namespace zetalab::cli {
namespace {

std::string describe(const ParamSpec& p) {
  std::string text = p.help;
  if (!p.default_value.is_null()) {
    const Json& d = p.default_value;
    text += " [default: ";
    if (p.type == ParamType::complex) {
      text += format_complex(complex_from_json(d));
    } else if (p.type == ParamType::complex_list) {
      for (std::size_t k = 0; k < d.size(); ++k) text += (k ? "," : "") + format_complex(complex_from_json(d[k]));
    } else if (d.is_string()) {
      text += d.get<std::string>();
    } else {
      text += d.dump();
    }
    text += "]";
  }
  if (!p.choices.empty()) {
    text += " {";
    for (std::size_t k = 0; k < p.choices.size(); ++k) text += (k ? "|" : "") + p.choices[k];
    text += "}";
  }
  return text;
}

std::string progress_line(const CheckRecord& r) {
  std::ostringstream line;
  line << "[" << r.name << "] " << (r.passed() ? "pass" : "FAIL") << " ";
  if (!r.error.empty()) {
    line << r.error;
  } else {
    line << r.value << " " << to_string(r.relation) << " ";
    if (r.relation == Relation::at_most) line << r.upper;
    if (r.relation == Relation::at_least) line << r.lower;
    if (r.relation == Relation::within) line << "[" << r.lower << ", " << r.upper << "]";
  }
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.0f", r.runtime_ms);
  line << " (" << ms << " ms)";
  return line.str();
}

Json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(path + " is not valid JSON: " + e.what());
  }
  if (j.contains("config")) j = j["config"];
  if (!j.is_object() || !j.contains("command")) throw UsageError(path + " has no command");
  return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification experiments for zeta-function eigen-problems.", "zetalab"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string format = "json", out_path, config_path;
  unsigned jobs = 1;
  std::optional<double> tol_rel, tol_abs, check_tol;
  std::optional<long> max_evals;
  bool quiet = false;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--jobs", jobs, "worker threads (0 = all cores)");
  app.add_option("--tol-rel", tol_rel, "relative quadrature tolerance for every evaluation");
  app.add_option("--tol-abs", tol_abs, "absolute quadrature tolerance for every evaluation");
  app.add_option("--max-evals", max_evals, "integrand evaluation budget per quadrature");
  app.add_option("--check-tol", check_tol, "replace the bound of every upper-bound check");
  app.add_option("--config", config_path, "re-run the config echo of a report (or a bare config object)");
  app.add_flag("--quiet", quiet, "no progress lines on stderr");

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const Command& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    for (const ParamSpec& p : c.schema) {
      if (p.type == ParamType::flag) {
        sub->add_flag("--" + p.name, flags[c.name][p.name], describe(p));
      } else {
        sub->add_option("--" + p.name, raw[c.name][p.name], describe(p));
      }
    }
  }

  auto usage = [&](const std::string& message, const CLI::App* context) {
    err << "error: " << message << "\n\n" << (context ? context->help() : app.help());
    return 2;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    out << (chosen.empty() ? app.help() : chosen.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto chosen = app.get_subcommands();
    return usage(e.what(), chosen.empty() ? nullptr : chosen.front());
  }

  const auto chosen = app.get_subcommands();
  const CLI::App* sub = chosen.empty() ? nullptr : chosen.front();
  try {
    const Command* command = nullptr;
    Json given = Json::object();
    Settings settings;
    if (!config_path.empty()) {
      if (sub) throw UsageError("--config replaces the subcommand; give one or the other");
      const Json config = read_config_file(config_path);
      command = find_command(config["command"].get<std::string>());
      if (!command) throw UsageError("unknown command in config: " + config["command"].dump());
      if (config.contains("parameters")) given = config["parameters"];
      if (config.contains("settings")) settings = Settings::from_json(config["settings"]);
      if (config.contains("format") && app.count("--format") == 0) format = config["format"].get<std::string>();
    } else {
      if (!sub) return usage("a subcommand is required", nullptr);
      command = find_command(sub->get_name());
      for (const ParamSpec& p : command->schema) {
        const std::string flag = "--" + p.name;
        if (sub->count(flag) == 0) continue;
        given[p.name] = p.type == ParamType::flag ? Json(flags[command->name][p.name])
                                                  : parse_param(p, raw[command->name][p.name]);
      }
    }
    if (tol_rel) settings.tol_rel = tol_rel;
    if (tol_abs) settings.tol_abs = tol_abs;
    if (max_evals) settings.max_evals = max_evals;
    if (check_tol) settings.check_tol = check_tol;
    if ((settings.tol_rel && !(*settings.tol_rel > 0)) || (settings.tol_abs && !(*settings.tol_abs > 0)) ||
        (settings.max_evals && *settings.max_evals <= 0))
      throw UsageError("tolerances and budgets must be positive");
    if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");

    const Json params = resolve_params(command->schema, given);
    if (command->validate) command->validate(params);
    sub = subs[command->name];

    Context ctx;
    ctx.settings = settings;
    ctx.jobs = jobs;
    if (!quiet) ctx.on_check = [&err](const CheckRecord& r) { err << progress_line(r) << "\n" << std::flush; };

    Report report;
    report.config = Json{{"command", command->name}, {"parameters", params}, {"settings", settings.to_json()},
                         {"format", format}};
    report.checks = command->run(params, ctx);

    const std::string body = format == "json" ? to_json(report).dump(2) + "\n" : to_csv(report);
    if (out_path.empty()) {
      out << body;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write " + out_path);
      file << body;
    }
    if (!quiet) {
      err << command->name << ": " << report.pass_count() << " passed, " << report.fail_count() << " failed\n";
    }
    return report.exit_code();
  } catch (const UsageError& e) {
    return usage(e.what(), sub);
  }
}

}  // namespace zetalab::cli
