#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/experiments.hpp"
#include "cli/run.hpp"

using namespace zetalab;
using namespace zetalab::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "zetalab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string without_runtimes(const std::string& text) {
  std::istringstream in(text);
  std::string kept;
  for (std::string line; std::getline(in, line);)
    if (line.find("\"runtime_ms\"") == std::string::npos) kept += line + "\n";
  return kept;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("complex arguments") {
  CHECK(*parse_complex("2+0i") == Complex(2.0, 0.0));
  CHECK(*parse_complex("0.5-14.134725i") == Complex(0.5, -14.134725));
  CHECK(*parse_complex("3i") == Complex(0.0, 3.0));
  CHECK(*parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(*parse_complex("+i") == Complex(0.0, 1.0));
  CHECK(*parse_complex("1e-3+2e-1i") == Complex(1e-3, 0.2));
  CHECK(*parse_complex("-1.5e+2-3E-2i") == Complex(-150.0, -0.03));
  CHECK(*parse_complex("0.75") == Complex(0.75, 0.0));
  CHECK_FALSE(parse_complex("").has_value());
  CHECK_FALSE(parse_complex("1+2j").has_value());
  CHECK_FALSE(parse_complex("a+bi").has_value());
  CHECK_FALSE(parse_complex("1 + 2i").has_value());
  for (Complex z : {Complex(0.1, -0.2), Complex(-3.0, 1e-30), Complex(14.134725141734693, 0.0)})
    CHECK(*parse_complex(format_complex(z)) == z);
  CHECK(complex_from_json(complex_json({1.5, -2.0})) == Complex(1.5, -2.0));
  CHECK(complex_from_json(Json("1-2i")) == Complex(1.0, -2.0));
}

TEST_CASE("parameter schemas") {
  const Command* zeros = find_command("zeros");
  REQUIRE(zeros != nullptr);
  const Json defaults = resolve_params(zeros->schema, Json::object());
  CHECK(defaults["t-min"] == 10.0);
  CHECK(defaults["expect-count"].is_null());
  CHECK_THROWS_AS(resolve_params(zeros->schema, Json{{"bogus", 1}}), UsageError);
  CHECK_THROWS_AS(resolve_params(zeros->schema, Json{{"t-max", 500.0}}), UsageError);
  CHECK_THROWS_AS(resolve_params(zeros->schema, Json{{"expect-count", 2.5}}), UsageError);

  const Command* eigen = find_command("eigen-residual");
  REQUIRE(eigen != nullptr);
  const Json p = resolve_params(eigen->schema, Json{{"z", "0.5+3i,0.6-1i"}, {"beta", Json::array({0.4})}});
  CHECK(complex_list_param(p, "z") == std::vector<Complex>{{0.5, 3.0}, {0.6, -1.0}});
  CHECK(real_list_param(p, "beta") == std::vector<double>{0.4});
  CHECK_THROWS_AS(resolve_params(eigen->schema, Json{{"beta", "0.4,1.5"}}), UsageError);

  // Every command except the suite is reachable and has a help text.
  CHECK(commands().back().name == "suite");
  for (const char* name : {"zeros", "zzfc", "functional-eq", "f0-eval", "special-cases", "eigen-residual",
                           "flux-identity", "hermiticity", "lerch-suite", "orthogonality", "scale-average",
                           "decay-bounds", "beta-half", "peculiar", "suite"}) {
    CAPTURE(name);
    REQUIRE(find_command(name) != nullptr);
    CHECK_FALSE(find_command(name)->help.empty());
  }
}

TEST_CASE("zeros report") {
  const Outcome r = invoke({"zeros", "--t-min", "10", "--t-max", "30", "--expect-count", "3"});
  CHECK(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["summary"]["fail"] == 0);
  const Json& zeros = report["checks"][0]["details"]["zeros"];
  REQUIRE(zeros.size() == 3);
  for (const Json& z : zeros) CHECK(z["residual"].get<double>() <= 1e-9);
  CHECK(zeros[0]["t"].get<double>() == doctest::Approx(14.134725141734693).epsilon(1e-12));
  CHECK(report["config"]["parameters"]["expect-count"] == 3);
  CHECK(report["version"].get<std::string>().rfind("zetalab", 0) == 0);
  CHECK(r.err.find("[zeros.residual] pass") != std::string::npos);
}

TEST_CASE("special-case example") {
  const Outcome r = invoke({"special-cases", "--beta", "1", "--z", "2+0i", "--x", "0.7", "--y", "1.0", "--quiet"});
  CHECK(r.code == 0);
  const Json report = Json::parse(r.out);
  REQUIRE(report["checks"].size() == 1);
  CHECK(report["checks"][0]["value"].get<double>() <= 1e-6);
  CHECK(report["config"]["parameters"]["z"] == Json{{"re", 2.0}, {"im", 0.0}});
  CHECK(r.err.empty());
}

TEST_CASE("exit codes") {
  const Outcome corrupted = invoke({"zeros", "--check-tol", "1e-30", "--quiet"});
  CHECK(corrupted.code == 1);
  const Json report = Json::parse(corrupted.out);
  CHECK(report["summary"]["fail"].get<int>() >= 1);
  CHECK(report["checks"][0]["pass"] == false);
  CHECK(report["checks"][0]["tolerance"] == 1e-30);

  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"zeros", "--t-min", "30", "--t-max", "10"}).code == 2);
  CHECK(invoke({"f0-eval", "--z", "1+2j"}).code == 2);
  CHECK(invoke({"f0-eval", "--z", "-1+2i"}).code == 2);
  CHECK(invoke({"special-cases", "--beta", "0.5", "--z", "2", "--x", "0", "--y", "1"}).code == 2);
  CHECK(invoke({"special-cases", "--beta", "1"}).code == 2);
  CHECK(invoke({"zeros", "--tol-rel", "-1"}).code == 2);
  CHECK(invoke({"zeros", "--format", "xml"}).code == 2);
  const Outcome usage = invoke({"zeros", "--t-min", "abc"});
  CHECK(usage.code == 2);
  CHECK(usage.err.find("--t-max") != std::string::npos);

  const Outcome budget =
      invoke({"special-cases", "--beta", "1", "--z", "2+0i", "--x", "0.7", "--y", "1", "--max-evals", "20", "--quiet"});
  CHECK(budget.code == 3);
  CHECK(Json::parse(budget.out)["checks"][0]["error"].get<std::string>().find("BudgetExceeded") == 0);

  const Outcome help = invoke({"peculiar", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--nodes") != std::string::npos);
}

TEST_CASE("csv output") {
  const Outcome r = invoke({"f0-eval", "--format", "csv", "--z", "0.5+3i", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("check,field,re,im\n", 0) == 0);
  CHECK(r.out.find("report,config.parameters.z,0.5,3\n") != std::string::npos);
  CHECK(r.out.find("f0-eval.error,pass,1,\n") != std::string::npos);
  CHECK(r.out.find("report,exit_code,0,\n") != std::string::npos);
}

TEST_CASE("determinism and config round trip") {
  const std::vector<std::string> args{"beta-half", "--nodes", "9", "--quiet"};
  const Outcome first = invoke(args);
  const Outcome second = invoke(args);
  CHECK(first.code == 0);
  CHECK(without_runtimes(first.out) == without_runtimes(second.out));

  const std::string path = "test_cli_roundtrip.json";
  CHECK(invoke({"peculiar", "--z", "0.6+2i", "--out", path, "--quiet"}).code == 0);
  const std::string saved = slurp(path);
  const Outcome replay = invoke({"--config", path, "--quiet"});
  CHECK(replay.code == 0);
  CHECK(without_runtimes(replay.out) == without_runtimes(saved));
  CHECK(Json::parse(replay.out)["fingerprint"] == Json::parse(saved)["fingerprint"]);
  CHECK(invoke({"--config", path, "zeros"}).code == 2);
  CHECK(invoke({"--config", "missing-file.json"}).code == 2);
  std::remove(path.c_str());

  const Json a = Json::parse(invoke({"zeros", "--quiet"}).out);
  const Json b = Json::parse(invoke({"zeros", "--t-max", "31", "--quiet"}).out);
  CHECK(a["fingerprint"] != b["fingerprint"]);
}
