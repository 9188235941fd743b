#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "hypcon/errors.hpp"
#include "hypcon/report_io.hpp"
#include "hypcon/suite.hpp"

using namespace hypcon;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run hypcon_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hypcon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = {}) {
  const auto p = std::filesystem::temp_directory_path() / ("hypcon_test_" + name);
  if (!content.empty()) std::ofstream(p) << content;
  return p;
}

std::filesystem::path source_dir() { return HYPCON_SOURCE_DIR; }

std::vector<std::string> config_errors(const json& doc) {
  try {
    parse_suite_config(doc);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format15(1.0986122886681098) == "1.09861228866811");
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(round15(0.0) == 0.0);
  CHECK(std::isinf(round15(INFINITY)));
  CHECK(number_json(NAN).is_null());
  CHECK(complex_json({1.0 / 3.0, -2.0}).dump() == "[0.333333333333333,-2.0]");
}

TEST_CASE("default configuration") {
  const SuiteConfig c = default_suite_config();
  CHECK(c.sample.count == 10000);
  CHECK(c.sample.seed == kDefaultSeed);
  CHECK(c.ball_dims == std::vector<std::size_t>{1, 2, 3});
  const auto plan = plan_suite(c);
  CHECK(plan.size() == 53);
  std::ifstream in(source_dir() / "configs" / "default.json");
  REQUIRE(in);
  CHECK(json::parse(in) == default_suite_json());
}

TEST_CASE("configuration errors are collected") {
  json doc = default_suite_json();
  doc["schema"] = "hypcon-suite/0";
  doc["sample"]["count"] = 0;
  doc["cases"][0]["check"] = "triangle";
  doc["cases"][1]["weight"] = "cosh";
  doc["cases"][2]["function"] = "nonexistent";
  doc["extra"] = true;
  const auto errors = config_errors(doc);
  CHECK(errors.size() >= 6);
  const std::string all = [&] {
    std::string s;
    for (const auto& e : errors) s += e + "\n";
    return s;
  }();
  CHECK(all.find("/schema") != std::string::npos);
  CHECK(all.find("/sample") != std::string::npos);
  CHECK(all.find("/cases/0/check") != std::string::npos);
  CHECK(all.find("/cases/1/weight") != std::string::npos);
  CHECK(all.find("/cases/2/function") != std::string::npos);
  CHECK(all.find("/extra") != std::string::npos);
}

TEST_CASE("inadmissible function and bad user functions") {
  json doc = {{"schema", kSuiteSchema},
              {"cases", {{{"check", "modulus_contraction"}, {"function", "strip_map"}}}}};
  CHECK(config_errors(doc).size() == 1);

  doc["cases"] = {{{"check", "re_contraction"}, {"function", "*"}}};
  CHECK(config_errors(doc).size() == 1);  // weight required

  doc["cases"] = {{{"check", "re_contraction"},
                  {"function", "*"},
                  {"weight", {{"kind", "sinh"}, {"k", 1.5}, {"C1", 1.0}, {"C2", 0.5}, {"lo", 0.0}, {"hi", 2.0}}}}};
  const auto empty = config_errors(doc);
  REQUIRE(empty.size() == 1);  // no catalog entry has Re f inside (0, 2)
  CHECK(empty[0].find("no function is admissible") != std::string::npos);

  doc["functions"] = {{{"id", "twice"}, {"codomain", "disk"}, {"numerator", {0, 2}}, {"denominator", {1}}}};
  doc["cases"] = {{{"check", "schwarz_pick"}, {"function", "twice"}}};
  const auto errors = config_errors(doc);
  REQUIRE(!errors.empty());
  CHECK(errors[0].find("codomain disk violated") != std::string::npos);

  doc["functions"] = {{{"id", "half"}, {"codomain", "disk"}, {"numerator", {0, {0, 0.5}}}, {"denominator", {1}}}};
  doc["cases"] = {{{"check", "schwarz_pick"}, {"function", "half"}, {"sample", {{"count", 500}}}}};
  const SuiteConfig c = parse_suite_config(doc);
  const SuiteReport r = run_suite(c);
  CHECK(r.passed);
  REQUIRE(r.reports.size() == 1);
  CHECK(r.reports[0].samples == 500);
}

TEST_CASE("weight families in a configuration") {
  json doc = {{"schema", kSuiteSchema},
              {"sample", {{"count", 1000}}},
              {"cases",
               {{{"check", "re_contraction"},
                 {"function", "strip_map"},
                 {"weight", {{"kind", "sin"}, {"k", 1.5}, {"C1", 1.5707963267948966}, {"C2", -1.5707963267948966},
                             {"lo", -1}, {"hi", 1}}}}}}};
  const SuiteReport r = run_suite(parse_suite_config(doc));
  CHECK(r.passed);
  doc["cases"][0]["weight"]["hi"] = 2;
  const auto errors = config_errors(doc);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].starts_with("/cases/0/weight"));
}

TEST_CASE("report JSON keeps timings out of the payload") {
  json doc = {{"schema", kSuiteSchema},
              {"sample", {{"count", 300}}},
              {"cases", {{{"check", "kv_factor"}, {"function", "strip_map"}}}}};
  const SuiteReport r = run_suite(parse_suite_config(doc));
  const json j = suite_to_json(r);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["payload"].dump().find("wall_time") == std::string::npos);
  CHECK(j["metadata"].contains("wall_time"));
  CHECK(j["metadata"]["threads"] == 1);
  CHECK(j["payload"]["cases"][0]["case_id"] == "kv_factor/strip_map");
  CHECK(j["payload"]["cases"][0].contains("sup_ratio"));
}

TEST_CASE("cli: distance") {
  Run r = hypcon_cli({"distance", "disk", "0", "0.5"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["value"] == 1.09861228866811);
  CHECK(j["method"] == "closed_form");
  CHECK(j["iterations"] == 0);

  r = hypcon_cli({"distance", "halfplane", "1", "2.718281828459045"});
  CHECK(json::parse(r.out)["value"] == 1.0);

  r = hypcon_cli({"distance", "strip", "0", "0.5"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["method"] == "variational");
  CHECK(j["value"].get<double>() == doctest::Approx(0.8813735870195430).epsilon(1e-6));

  r = hypcon_cli({"distance", "disk", "0.3+0.4i", "(0.1,-0.2)"});
  CHECK(r.code == 0);
  r = hypcon_cli({"distance", "disk", "0", "1.5"});
  CHECK(r.code == 2);
  r = hypcon_cli({"distance", "disk", "0", "abc"});
  CHECK(r.code == 2);
  r = hypcon_cli({"distance", "annulus", "0", "0.1"});
  CHECK(r.code == 2);
}

TEST_CASE("cli: curvature tables") {
  Run r = hypcon_cli({"curvature", "--weight", "strip", "--points", "21"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,omega,k_omega,k_omega_numeric");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    CHECK(std::stod(line.substr(c2 + 1, c3 - c2 - 1)) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  CHECK(rows == 21);

  r = hypcon_cli({"curvature", "--weight", "omega_tilde", "--points", "5"});
  CHECK(r.out.find("\n0,2,-0.5,") != std::string::npos);

  r = hypcon_cli({"curvature", "--domain", "disk", "--points", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",-1,") != std::string::npos);

  r = hypcon_cli({"curvature", "--family", "sinh", "--c1", "1", "--c2", "0.5", "--lo", "0", "--hi", "2", "--k", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",-4,") != std::string::npos);
  CHECK(hypcon_cli({"curvature", "--family", "sin", "--lo", "-1", "--hi", "4"}).code == 2);
  CHECK(hypcon_cli({"curvature"}).code == 2);
}

TEST_CASE("cli: ode") {
  Run r = hypcon_cli({"ode", "--family", "sinh", "--c1", "1", "--c2", "1", "--t0", "0", "--t1", "1", "--points", "11"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,lambda_num,lambda_exact,error");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) < 1e-6);
  }
  CHECK(rows == 11);
  r = hypcon_cli({"ode", "--family", "sin", "--c1", "1.5707963267948966", "--c2", "-1.5707963267948966",
                  "--t1", "1.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("blow-up") != std::string::npos);
  CHECK(hypcon_cli({"ode"}).code == 2);
}

TEST_CASE("cli: catalog") {
  Run r = hypcon_cli({"catalog", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.size() == 11);
  CHECK(j[0]["id"] == "identity");
  r = hypcon_cli({"catalog"});
  CHECK(r.out.find("strip_map  strip") != std::string::npos);
}

TEST_CASE("cli: verify exit codes") {
  CHECK(hypcon_cli({"verify", "/nonexistent/config.json"}).code == 2);
  Run bad = hypcon_cli({"verify", temp_file("bad.json", "{\"schema\": 1}").string()});
  CHECK(bad.code == 2);
  const json errors = json::parse(bad.err);
  CHECK(errors["errors"].size() >= 2);
  CHECK(hypcon_cli({"verify", temp_file("broken.json", "{").string()}).code == 2);

  Run neg = hypcon_cli({"verify", (source_dir() / "configs" / "omega_tilde_main.json").string()});
  CHECK(neg.code == 1);
  CHECK(neg.out.find("hypothesis_not_met") != std::string::npos);
  CHECK(hypcon_cli({"verify", (source_dir() / "configs" / "omega_tilde_expected.json").string()}).code == 0);
}

TEST_CASE("cli: default suite passes") {
  Run r = hypcon_cli({"verify", "--threads", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli: seed overrides and reports") {
  const std::string small =
      R"({"schema": "hypcon-suite/1", "sample": {"count": 200, "seed": 5},
          "cases": [{"check": "schwarz_pick", "function": "z_squared"},
                    {"check": "kv_factor", "function": "strip_map", "sample": {"count": 100}}]})";
  const auto cfg = temp_file("small.json", small).string();
  const auto out = temp_file("small_report.json").string();

  Run r = hypcon_cli({"verify", cfg, "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["payload"]["seed"] == 5);

  ::setenv(cli::kSeedEnv, "77", 1);
  r = hypcon_cli({"verify", cfg, "--json"});
  const json env_run = json::parse(r.out);
  CHECK(env_run["payload"]["seed"] == 77);
  CHECK(env_run["payload"]["cases"][1]["seed"] == 77);
  r = hypcon_cli({"verify", cfg, "--json", "--seed", "9"});
  CHECK(json::parse(r.out)["payload"]["seed"] == 9);
  ::setenv(cli::kSeedEnv, "not-a-seed", 1);
  CHECK(hypcon_cli({"verify", cfg}).code == 2);
  ::unsetenv(cli::kSeedEnv);

  r = hypcon_cli({"verify", cfg, "--output", out});
  REQUIRE(r.code == 0);
  Run rep = hypcon_cli({"report", out});
  CHECK(rep.code == 0);
  CHECK(rep.out.find("schwarz_pick/z_squared") != std::string::npos);
  CHECK(rep.out.find("PASS") != std::string::npos);
  CHECK(hypcon_cli({"report", cfg}).code == 2);

  const auto csv = temp_file("small.csv").string();
  r = hypcon_cli({"verify", cfg, "--output", csv, "--format", "csv"});
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "case_id,z_re,z_im,w_re,w_im,lhs,rhs,margin");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 300);
}

TEST_CASE("cli: usage") {
  CHECK(hypcon_cli({}).code == 2);
  CHECK(hypcon_cli({"frobnicate"}).code == 2);
  Run help = hypcon_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}
