#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypcon/catalog.hpp"
#include "hypcon/conformal.hpp"
#include "hypcon/errors.hpp"
#include "hypcon/liouville.hpp"
#include "hypcon/report_io.hpp"
#include "hypcon/suite.hpp"
#include "hypcon/weights.hpp"

namespace hypcon::cli {

namespace {

using nlohmann::json;

// Usage problems found after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw UsageError(what + " must be an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

// Accepts "x", "x,y", "(x,y)", "x+yi", "x-yi", "yi".
Complex parse_complex(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
  static const std::regex pair(num + "," + num);
  static const std::regex real(num);
  static const std::regex imag(R"(([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij])");
  static const std::regex both(num + R"(([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij])");
  const auto coef = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  std::smatch m;
  if (std::regex_match(text, m, pair)) return {std::stod(m[1]), std::stod(m[2])};
  if (std::regex_match(text, m, real)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(text, m, imag)) return {0.0, coef(m[1])};
  if (std::regex_match(text, m, both)) return {std::stod(m[1]), coef(m[2])};
  throw UsageError("cannot parse complex number '" + text + "'");
}

struct WeightArgs {
  std::string named;
  std::string family;
  double k = 1.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double c = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;

  void add_to(CLI::App* app, bool family_options_only = false) {
    if (!family_options_only) {
      app->add_option("--weight", named, "Named weight: strip, half_plane, omega_tilde")
          ->check(CLI::IsMember({"strip", "half_plane", "omega_tilde"}));
    }
    app->add_option("--family", family, "Weight family: sin, sinh, linear")
        ->check(CLI::IsMember({"sin", "sinh", "linear"}));
    app->add_option("--k", k, "Curvature parameter, k_omega = -k^2");
    app->add_option("--c1", c1, "C1 (sin, sinh)");
    app->add_option("--c2", c2, "C2 (sin, sinh)");
    app->add_option("--c", c, "C (linear)");
    app->add_option("--lo", lo, "Interval start");
    app->add_option("--hi", hi, "Interval end");
  }

  WeightFamily make_family() const {
    WeightFamily f;
    f.kind = family_kind_from_string(family);
    f.k = k;
    f.c1 = c1;
    f.c2 = c2;
    f.c = c;
    return f;
  }

  std::optional<Weight> build() const {
    if (!named.empty() && !family.empty()) throw UsageError("give either --weight or --family");
    if (!named.empty()) return WeightSpec{named, std::nullopt}.build();
    if (family.empty()) return std::nullopt;
    if (!lo || !hi) throw UsageError("--family needs --lo and --hi");
    WeightFamily f = make_family();
    f.domain = Interval(*lo, *hi);
    return family_weight(f);
  }
};

std::string csv_number(double x) { return std::isfinite(x) ? format15(x) : "nan"; }

// Seed precedence: --seed, then the environment variable, then the config file.
void override_seed(json& doc, std::uint64_t seed) {
  if (!doc.is_object()) return;
  if (!doc.contains("sample") || !doc["sample"].is_object()) doc["sample"] = json::object();
  doc["sample"]["seed"] = seed;
  if (doc.contains("cases") && doc["cases"].is_array()) {
    for (auto& c : doc["cases"]) {
      if (c.is_object() && c.contains("sample") && c["sample"].is_object()) c["sample"]["seed"] = seed;
    }
  }
}

struct VerifyArgs {
  std::string config;
  std::optional<std::string> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string output;
  std::string format;
  bool json_stdout = false;
  bool dump_config = false;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.dump_config) {
    out << default_suite_json().dump(2) << '\n';
    return kExitOk;
  }
  json doc;
  if (args.config.empty()) {
    doc = default_suite_json();
  } else {
    std::ifstream in(args.config);
    if (!in) throw ConfigError({"cannot read configuration file '" + args.config + "'"});
    try {
      in >> doc;
    } catch (const json::parse_error& e) {
      throw ConfigError({"'" + args.config + "' is not valid JSON: " + e.what()});
    }
  }
  if (args.seed) {
    override_seed(doc, parse_seed(*args.seed, "--seed"));
  } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
    override_seed(doc, parse_seed(env, kSeedEnv));
  }
  SuiteConfig config = parse_suite_config(doc);
  if (!args.output.empty()) config.output_path = args.output;
  if (!args.format.empty()) {
    config.output_format = args.format == "csv" ? OutputFormat::csv : OutputFormat::json;
  }

  Execution exec;
  exec.threads = args.threads;
  exec.keep_samples = config.output_path && config.output_format == OutputFormat::csv;
  const SuiteReport suite = run_suite(config, exec);
  const json report = suite_to_json(suite);

  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) {
      err << "cannot write '" << config.output_path->string() << "'\n";
      return kExitUsage;
    }
    if (config.output_format == OutputFormat::csv) {
      write_samples_csv(file, suite);
    } else {
      file << report.dump(2) << '\n';
    }
  }
  if (args.json_stdout) {
    out << report.dump(2) << '\n';
  } else {
    print_report_summary(out, report);
    for (const auto& f : suite.failures) err << "failed: " << f << '\n';
  }
  return suite.passed ? kExitOk : kExitFailed;
}

struct DistanceArgs {
  std::string domain;
  std::string z;
  std::string w;
  WeightArgs weight;
  bool variational = false;
  std::size_t nodes = 65;
};

int cmd_distance(const DistanceArgs& args, std::ostream& out) {
  PlanarDomain domain = PlanarDomain::poincare_disk();
  if (args.domain == "halfplane") {
    domain = PlanarDomain::half_plane();
  } else if (args.domain == "strip") {
    domain = PlanarDomain::strip(args.weight.build().value_or(strip_weight()));
  } else if (!args.weight.named.empty() || !args.weight.family.empty()) {
    throw UsageError("--weight and --family apply to the strip domain only");
  }
  const Complex z = parse_complex(args.z);
  const Complex w = parse_complex(args.w);
  DistanceOptions options;
  options.force_variational = args.variational;
  options.variational.interior_nodes = args.nodes;
  const DistanceResult r = distance(domain, z, w, options);
  json j = {
      {"domain", domain.description()},
      {"z", complex_json(z)},
      {"w", complex_json(w)},
      {"value", number_json(r.value)},
      {"method", to_string(r.method)},
      {"iterations", r.iterations()},
      {"converged", r.converged()},
  };
  out << j.dump(2) << '\n';
  return r.converged() ? kExitOk : kExitFailed;
}

struct CurvatureArgs {
  std::string domain;
  WeightArgs weight;
  std::size_t points = 11;
  double shrink = 1e-3;
};

int cmd_curvature(const CurvatureArgs& args, std::ostream& out) {
  const std::optional<Weight> weight = args.weight.build();
  GridSpec grid{args.points, args.shrink};
  if (args.points < 1) throw UsageError("--points must be at least 1");

  if (args.domain.empty()) {
    if (!weight) throw UsageError("give --domain, --weight or --family");
    out << "t,omega,k_omega,k_omega_numeric\n";
    for (double t : grid_points(weight->domain(), grid)) {
      double numeric = std::numeric_limits<double>::quiet_NaN();
      try {
        numeric = curvature_k_numeric(*weight, t);
      } catch (const DomainError&) {
      }
      out << csv_number(t) << ',' << csv_number((*weight)(t)) << ','
          << csv_number(curvature_k(*weight, t)) << ',' << csv_number(numeric) << '\n';
    }
    return kExitOk;
  }

  // Points on a horizontal segment through the domain.
  PlanarDomain domain = PlanarDomain::poincare_disk();
  Interval xs(-0.9, 0.9);
  double y = 0.25;
  if (args.domain == "halfplane") {
    domain = PlanarDomain::half_plane();
    xs = Interval(0.0, 4.0);
    y = 0.5;
  } else if (args.domain == "strip") {
    domain = PlanarDomain::strip(weight.value_or(strip_weight()));
    xs = domain.weight()->domain();
    y = 0.5;
  } else if (weight) {
    throw UsageError("--weight and --family apply to the strip domain only");
  }
  out << "x,y,density,gauss_curvature,gauss_curvature_numeric\n";
  for (double x : grid_points(xs, grid)) {
    const Complex z(x, y);
    if (!domain.contains(z)) continue;
    double numeric = std::numeric_limits<double>::quiet_NaN();
    try {
      numeric = gauss_curvature_numeric(domain, z);
    } catch (const std::exception&) {
    }
    out << csv_number(x) << ',' << csv_number(y) << ',' << csv_number(density(domain, z)) << ','
        << csv_number(gauss_curvature(domain, z)) << ',' << csv_number(numeric) << '\n';
  }
  return kExitOk;
}

// Largest interval around t on which the family's denominator does not vanish.
Interval regular_interval(const WeightFamily& f, double t) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (f.kind == FamilyKind::linear || f.kind == FamilyKind::sinh) {
    const double root = f.kind == FamilyKind::linear ? -f.c : -f.c2 / f.c1;
    if (t == root) throw UsageError("--t0 is a singular point of the family");
    return t > root ? Interval(root, inf) : Interval(-inf, root);
  }
  const double m = std::floor((f.c1 * t + f.c2) / std::numbers::pi);
  return Interval((m * std::numbers::pi - f.c2) / f.c1, ((m + 1) * std::numbers::pi - f.c2) / f.c1);
}

struct OdeArgs {
  WeightArgs family;
  double t0 = 0.0;
  double t1 = 1.0;
  double tol = 1e-10;
  std::size_t points = 11;
  std::optional<double> lambda0;
  std::optional<double> dlambda0;
};

int cmd_ode(const OdeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.family.family.empty()) throw UsageError("--family is required");
  if (args.points < 2) throw UsageError("--points must be at least 2");
  if (args.lambda0.has_value() != args.dlambda0.has_value()) {
    throw UsageError("give both --lambda0 and --dlambda0, or neither");
  }
  WeightFamily family = args.family.make_family();
  family.domain = args.family.lo && args.family.hi ? Interval(*args.family.lo, *args.family.hi)
                                                   : regular_interval(family, args.t0);
  LiouvilleState initial = closed_form_state(family, args.t0);
  if (args.lambda0) initial = {args.t0, *args.lambda0, *args.dlambda0};
  const Trajectory traj = solve_liouville(initial, args.t1, args.tol);

  out << "t,lambda_num,lambda_exact,error\n";
  const double t_lo = std::min(args.t0, args.t1);
  const double t_hi = std::max(args.t0, args.t1);
  for (std::size_t i = 0; i < args.points; ++i) {
    const double t = args.t0 + (args.t1 - args.t0) * static_cast<double>(i) / (args.points - 1);
    const double tc = std::clamp(t, t_lo, t_hi);
    if (tc < traj.t_begin() || tc > traj.t_end()) break;
    const double num = traj.at(tc).lambda;
    double exact = std::numeric_limits<double>::quiet_NaN();
    try {
      exact = closed_form_lambda(family, tc);
    } catch (const std::exception&) {
    }
    out << csv_number(tc) << ',' << csv_number(num) << ',' << csv_number(exact) << ','
        << csv_number(std::abs(num - exact)) << '\n';
  }
  if (traj.blow_up()) {
    err << "blow-up: lambda exceeded " << traj.control().lambda_cap << " at t = "
        << format15(args.t1 >= args.t0 ? traj.t_end() : traj.t_begin()) << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_catalog(bool as_json, std::ostream& out) {
  json list = json::array();
  for (const auto& f : catalog()) {
    json params = json::object();
    for (const auto& [name, value] : f.params) params[name] = number_json(value);
    list.push_back({{"id", f.id},
                    {"codomain", to_string(f.codomain)},
                    {"automorphism", f.automorphism},
                    {"params", params}});
  }
  if (as_json) {
    out << list.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& f : list) {
    out << f["id"].get<std::string>() << "  " << f["codomain"].get<std::string>();
    for (const auto& [name, value] : f["params"].items()) {
      out << "  " << name << "=" << format15(value.get<double>());
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of contraction inequalities for holomorphic maps of the disk",
               "hypcon"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a verification suite (default: the built-in one)");
  verify->add_option("config", verify_args.config, "Suite configuration (JSON)");
  verify->add_option("--seed", verify_args.seed, "Sampling seed (overrides HYPCON_SEED and the config)");
  verify->add_option("--threads", verify_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--output", verify_args.output, "Write the report to this file");
  verify->add_option("--format", verify_args.format, "Report format for --output")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--json", verify_args.json_stdout, "Print the full JSON report on stdout");
  verify->add_flag("--dump-config", verify_args.dump_config, "Print the built-in configuration");

  DistanceArgs distance_args;
  auto* dist = app.add_subcommand("distance", "Distance between two points of a planar domain");
  dist->add_option("domain", distance_args.domain, "disk, halfplane or strip")
      ->required()
      ->check(CLI::IsMember({"disk", "halfplane", "strip"}));
  dist->add_option("z", distance_args.z, "First point, e.g. 0.5, 0.1,0.2 or 0.1+0.2i")->required();
  dist->add_option("w", distance_args.w, "Second point")->required();
  dist->add_flag("--variational", distance_args.variational, "Force the variational solver");
  dist->add_option("--nodes", distance_args.nodes, "Interior polyline nodes")->check(CLI::Range(1, 4096));
  distance_args.weight.add_to(dist);

  CurvatureArgs curvature_args;
  auto* curv = app.add_subcommand("curvature", "Tabulate k_omega of a weight or the Gauss curvature of a domain");
  curv->add_option("--domain", curvature_args.domain, "disk, halfplane or strip")
      ->check(CLI::IsMember({"disk", "halfplane", "strip"}));
  curv->add_option("--points", curvature_args.points, "Grid points");
  curv->add_option("--shrink", curvature_args.shrink, "Distance kept from interval ends")
      ->check(CLI::Range(0.0, 0.5));
  curvature_args.weight.add_to(curv);

  OdeArgs ode_args;
  auto* ode = app.add_subcommand("ode", "Integrate lambda'' = exp(lambda) against a closed-form family");
  ode_args.family.add_to(ode, true);
  ode->add_option("--t0", ode_args.t0, "Start of the window");
  ode->add_option("--t1", ode_args.t1, "End of the window");
  ode->add_option("--tol", ode_args.tol, "Local error tolerance")->check(CLI::PositiveNumber);
  ode->add_option("--points", ode_args.points, "Output rows");
  ode->add_option("--lambda0", ode_args.lambda0, "Initial lambda (default: from the family)");
  ode->add_option("--dlambda0", ode_args.dlambda0, "Initial lambda'");

  bool catalog_json = false;
  auto* cat = app.add_subcommand("catalog", "List the built-in holomorphic functions");
  cat->add_flag("--json", catalog_json, "JSON output");

  std::string report_path;
  auto* rep = app.add_subcommand("report", "Summarise a JSON report written by verify");
  rep->add_option("path", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
        out << sub->help();
      }
      return kExitOk;
    }
    err << "error: " << e.what() << "\nrun 'hypcon --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(verify_args, out, err);
    if (*dist) return cmd_distance(distance_args, out);
    if (*curv) return cmd_curvature(curvature_args, out);
    if (*ode) return cmd_ode(ode_args, out, err);
    if (*cat) return cmd_catalog(catalog_json, out);
    if (*rep) {
      const json report = load_report(report_path);
      print_report_summary(out, report);
      return report["payload"].value("passed", false) ? kExitOk : kExitFailed;
    }
  } catch (const ConfigError& e) {
    err << json{{"errors", e.errors()}}.dump(2) << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (estimate " << format15(e.estimate()) << ")\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace hypcon::cli
