#include "hypcon/suite.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

#include "hypcon/errors.hpp"

namespace hypcon {

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
        std::string msg = "invalid suite configuration";
        for (const auto& e : errors) msg += "\n  - " + e;
        return msg;
      }()),
      errors_(std::move(errors)) {}

Weight WeightSpec::build() const {
  if (family) return family_weight(*family);
  if (named == "strip") return strip_weight();
  if (named == "half_plane") return half_plane_weight();
  if (named == "omega_tilde") return omega_tilde_weight();
  throw InvalidInput("unknown weight '" + named + "'");
}

namespace {

using nlohmann::json;

// Collects errors with a JSON-pointer-like location instead of throwing on the first.
class Reader {
 public:
  std::vector<std::string> errors;

  void error(const std::string& where, const std::string& what) {
    errors.push_back(where + ": " + what);
  }

  template <class T>
  std::optional<T> get(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    try {
      return obj.at(key).get<T>();
    } catch (const json::exception&) {
      error(where + "/" + key, "has the wrong type");
      return std::nullopt;
    }
  }

  void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& item : obj.items()) {
      if (!known.contains(item.key())) error(where + "/" + item.key(), "unknown key");
    }
  }

  SampleSpec sample(const json& j, SampleSpec base, const std::string& where) {
    if (!j.is_object()) {
      error(where, "must be an object");
      return base;
    }
    reject_unknown(j, {"count", "seed", "radius_cap", "scheme"}, where);
    if (auto v = get<std::size_t>(j, "count", where)) base.count = *v;
    if (auto v = get<std::uint64_t>(j, "seed", where)) base.seed = *v;
    if (auto v = get<double>(j, "radius_cap", where)) base.radius_cap = *v;
    if (auto v = get<std::string>(j, "scheme", where)) {
      try {
        base.scheme = sample_scheme_from_string(*v);
      } catch (const InvalidInput& e) {
        error(where + "/scheme", e.what());
      }
    }
    try {
      base.validate();
    } catch (const InvalidInput& e) {
      error(where, e.what());
    }
    return base;
  }

  PolarGrid grid(const json& j, PolarGrid base, const std::string& where) {
    if (!j.is_object()) {
      error(where, "must be an object");
      return base;
    }
    reject_unknown(j, {"radial", "angular", "radius_cap"}, where);
    if (auto v = get<std::size_t>(j, "radial", where)) base.radial = *v;
    if (auto v = get<std::size_t>(j, "angular", where)) base.angular = *v;
    if (auto v = get<double>(j, "radius_cap", where)) base.radius_cap = *v;
    if (base.radial < 1 || base.angular < 1) error(where, "grid must be non-empty");
    if (!(base.radius_cap > 0.0 && base.radius_cap <= 1.0 - kBoundaryGuard)) {
      error(where + "/radius_cap", "must lie in (0, 1 - boundary_guard]");
    }
    return base;
  }

  Tolerance tolerance(const json& j, Tolerance base, const std::string& where) {
    if (!j.is_object()) {
      error(where, "must be an object");
      return base;
    }
    reject_unknown(j, {"abs", "rel"}, where);
    if (auto v = get<double>(j, "abs", where)) base.abs = *v;
    if (auto v = get<double>(j, "rel", where)) base.rel = *v;
    if (!(base.abs >= 0.0) || !(base.rel >= 0.0)) error(where, "tolerances must be non-negative");
    return base;
  }

  std::vector<std::size_t> dims(const json& j, const std::string& where) {
    std::vector<std::size_t> out;
    if (!j.is_array()) {
      error(where, "must be an array of dimensions");
      return out;
    }
    for (const auto& d : j) {
      if (!d.is_number_unsigned() || d.get<std::size_t>() < 1 || d.get<std::size_t>() > 8) {
        error(where, "dimensions must be integers in [1, 8]");
        continue;
      }
      out.push_back(d.get<std::size_t>());
    }
    return out;
  }

  std::optional<WeightSpec> weight(const json& j, const std::string& where) {
    WeightSpec spec;
    if (j.is_string()) {
      spec.named = j.get<std::string>();
    } else if (j.is_object()) {
      reject_unknown(j, {"named", "kind", "k", "C1", "C2", "C", "lo", "hi"}, where);
      if (auto v = get<std::string>(j, "named", where)) {
        spec.named = *v;
      } else {
        const auto kind = get<std::string>(j, "kind", where);
        const auto lo = get<double>(j, "lo", where);
        const auto hi = get<double>(j, "hi", where);
        if (!kind || !lo || !hi) {
          error(where, "a weight family needs kind, lo and hi");
          return std::nullopt;
        }
        try {
          WeightFamily f;
          f.kind = family_kind_from_string(*kind);
          f.k = get<double>(j, "k", where).value_or(1.0);
          f.c1 = get<double>(j, "C1", where).value_or(1.0);
          f.c2 = get<double>(j, "C2", where).value_or(0.0);
          f.c = get<double>(j, "C", where).value_or(0.0);
          f.domain = Interval(*lo, *hi);
          validate_family(f);
          spec.family = f;
        } catch (const std::exception& e) {
          error(where, e.what());
          return std::nullopt;
        }
      }
    } else {
      error(where, "must be a weight name or a family object");
      return std::nullopt;
    }
    if (!spec.family && spec.named != "strip" && spec.named != "half_plane" &&
        spec.named != "omega_tilde") {
      error(where, "unknown weight '" + spec.named + "'");
      return std::nullopt;
    }
    return spec;
  }

  std::vector<Complex> coefficients(const json& j, const std::string& where) {
    std::vector<Complex> out;
    if (!j.is_array()) {
      error(where, "must be an array of coefficients");
      return out;
    }
    for (const auto& c : j) {
      if (c.is_number()) {
        out.emplace_back(c.get<double>(), 0.0);
      } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
        out.emplace_back(c[0].get<double>(), c[1].get<double>());
      } else {
        error(where, "coefficients are numbers or [re, im] pairs");
      }
    }
    return out;
  }
};

}  // namespace

SuiteConfig parse_suite_config(const json& doc) {
  Reader in;
  SuiteConfig config;
  if (!doc.is_object()) throw ConfigError({"/: configuration must be a JSON object"});
  in.reject_unknown(doc, {"schema", "sample", "grid", "ball_dims", "tolerance", "functions",
                          "cases", "output"},
                    "");
  const auto schema = in.get<std::string>(doc, "schema", "");
  if (!schema) {
    in.error("/schema", "missing; expected \"" + std::string(kSuiteSchema) + "\"");
  } else if (*schema != kSuiteSchema) {
    in.error("/schema", "unsupported schema '" + *schema + "'");
  }
  if (doc.contains("sample")) config.sample = in.sample(doc["sample"], config.sample, "/sample");
  if (doc.contains("grid")) config.grid = in.grid(doc["grid"], config.grid, "/grid");
  if (doc.contains("ball_dims")) config.ball_dims = in.dims(doc["ball_dims"], "/ball_dims");
  if (doc.contains("tolerance")) {
    config.tolerance = in.tolerance(doc["tolerance"], config.tolerance, "/tolerance");
  }

  // User functions are re-validated against their codomain before anything runs.
  std::set<std::string> ids;
  for (const auto& f : catalog()) ids.insert(f.id);
  if (doc.contains("functions")) {
    if (!doc["functions"].is_array()) in.error("/functions", "must be an array");
    std::size_t index = 0;
    for (const auto& fj : doc["functions"].is_array() ? doc["functions"] : json::array()) {
      const std::string where = "/functions/" + std::to_string(index++);
      if (!fj.is_object()) {
        in.error(where, "must be an object");
        continue;
      }
      in.reject_unknown(fj, {"id", "kind", "numerator", "denominator", "codomain"}, where);
      const auto id = in.get<std::string>(fj, "id", where);
      const auto kind = in.get<std::string>(fj, "kind", where).value_or("rational");
      const auto codomain = in.get<std::string>(fj, "codomain", where);
      if (!id || !codomain || !fj.contains("numerator") || !fj.contains("denominator")) {
        in.error(where, "needs id, codomain, numerator and denominator");
        continue;
      }
      if (kind != "rational") {
        in.error(where + "/kind", "only rational functions can be declared");
        continue;
      }
      if (ids.contains(*id)) {
        in.error(where + "/id", "duplicate function id '" + *id + "'");
        continue;
      }
      const auto num = in.coefficients(fj["numerator"], where + "/numerator");
      const auto den = in.coefficients(fj["denominator"], where + "/denominator");
      try {
        HoloFunction f = rational_function(*id, num, den, codomain_from_string(*codomain));
        const CodomainCheck check = validate_codomain(f);
        if (!check.ok) {
          in.error(where, "declared codomain " + *codomain + " violated at z = (" +
                              std::to_string(check.offending_point->real()) + ", " +
                              std::to_string(check.offending_point->imag()) + ")");
          continue;
        }
        ids.insert(*id);
        config.extra_functions.push_back(std::move(f));
      } catch (const std::exception& e) {
        in.error(where, e.what());
      }
    }
  }

  if (!doc.contains("cases") || !doc["cases"].is_array() || doc["cases"].empty()) {
    in.error("/cases", "must be a non-empty array");
  } else {
    std::size_t index = 0;
    std::set<std::string> case_ids;
    for (const auto& cj : doc["cases"]) {
      const std::string where = "/cases/" + std::to_string(index++);
      if (!cj.is_object()) {
        in.error(where, "must be an object");
        continue;
      }
      in.reject_unknown(cj, {"id", "check", "function", "weight", "factor", "sample", "grid",
                             "tolerance", "ball_dims", "expect"},
                        where);
      CaseSpec spec;
      const auto check = in.get<std::string>(cj, "check", where);
      if (!check) {
        in.error(where + "/check", "missing");
        continue;
      }
      const bool is_abs = *check == "abs_inequalities";
      if (!is_abs) {
        try {
          spec.check = check_kind_from_string(*check);
        } catch (const InvalidInput& e) {
          in.error(where + "/check", e.what());
          continue;
        }
        if (spec.check == CheckKind::abs_rho || spec.check == CheckKind::abs_sigma ||
            spec.check == CheckKind::ball_beta) {
          in.error(where + "/check", "use \"abs_inequalities\" for the |z|, |w| checks");
          continue;
        }
      } else {
        spec.check = CheckKind::abs_rho;
      }
      spec.function = in.get<std::string>(cj, "function", where).value_or(is_abs ? "" : "*");
      const bool single = !is_abs && spec.function != "*";
      spec.id = in.get<std::string>(cj, "id", where).value_or(single ? *check + "/" + spec.function : *check);
      if (!case_ids.insert(spec.id).second) in.error(where + "/id", "duplicate case id");
      if (!is_abs && spec.function != "*" && !ids.contains(spec.function)) {
        in.error(where + "/function", "unknown function '" + spec.function + "'");
      }
      if (cj.contains("weight")) spec.weight = in.weight(cj["weight"], where + "/weight");
      const bool needs_weight =
          !is_abs && (spec.check == CheckKind::re_contraction ||
                      spec.check == CheckKind::pointwise_gradient);
      if (needs_weight && !spec.weight) in.error(where + "/weight", "required for " + *check);
      spec.factor = in.get<double>(cj, "factor", where);
      if (spec.factor && !(*spec.factor > 0.0)) in.error(where + "/factor", "must be positive");
      if (cj.contains("sample")) spec.sample = in.sample(cj["sample"], config.sample, where + "/sample");
      if (cj.contains("grid")) spec.grid = in.grid(cj["grid"], config.grid, where + "/grid");
      if (cj.contains("tolerance")) {
        spec.tolerance = in.tolerance(cj["tolerance"], config.tolerance, where + "/tolerance");
      }
      if (cj.contains("ball_dims")) spec.ball_dims = in.dims(cj["ball_dims"], where + "/ball_dims");
      if (auto e = in.get<std::string>(cj, "expect", where)) {
        if (*e == "pass") spec.expect = Expectation::pass;
        else if (*e == "hypothesis_not_met") spec.expect = Expectation::hypothesis_not_met;
        else in.error(where + "/expect", "must be \"pass\" or \"hypothesis_not_met\"");
      }
      if (is_abs) spec.id = "abs:" + spec.id;
      config.cases.push_back(std::move(spec));
    }
  }

  if (doc.contains("output")) {
    const auto& oj = doc["output"];
    if (!oj.is_object()) {
      in.error("/output", "must be an object");
    } else {
      in.reject_unknown(oj, {"path", "format"}, "/output");
      if (auto p = in.get<std::string>(oj, "path", "/output")) config.output_path = *p;
      if (auto f = in.get<std::string>(oj, "format", "/output")) {
        if (*f == "json") config.output_format = OutputFormat::json;
        else if (*f == "csv") config.output_format = OutputFormat::csv;
        else in.error("/output/format", "must be \"json\" or \"csv\"");
      }
    }
  }

  if (!in.errors.empty()) throw ConfigError(std::move(in.errors));

  // applicability of explicitly named functions needs the extra functions too
  std::vector<std::string> late;
  try {
    plan_suite(config);
  } catch (const InvalidInput& e) {
    late.push_back(e.what());
  }
  if (!late.empty()) throw ConfigError(std::move(late));
  return config;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read configuration file '" + path.string() + "'"});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError({"'" + path.string() + "' is not valid JSON: " + e.what()});
  }
  return parse_suite_config(doc);
}

json default_suite_json() {
  json doc = json::parse(R"({
  "schema": "hypcon-suite/1",
  "sample": {"count": 10000, "radius_cap": 0.999, "scheme": "uniform_disk"},
  "grid": {"radial": 101, "angular": 101, "radius_cap": 0.999},
  "ball_dims": [1, 2, 3],
  "tolerance": {"abs": 1e-9, "rel": 1e-9},
  "cases": [
    {"id": "re_strip", "check": "re_contraction", "function": "*", "weight": "strip"},
    {"id": "re_half_plane", "check": "re_contraction", "function": "*", "weight": "half_plane"},
    {"id": "gradient_strip", "check": "pointwise_gradient", "function": "*", "weight": "strip"},
    {"id": "gradient_half_plane", "check": "pointwise_gradient", "function": "*", "weight": "half_plane"},
    {"id": "modulus", "check": "modulus_contraction", "function": "*"},
    {"id": "pavlovic", "check": "pavlovic", "function": "*"},
    {"id": "schwarz_pick", "check": "schwarz_pick", "function": "*"},
    {"id": "kv", "check": "kv_factor", "function": "*",
     "sample": {"count": 100000, "scheme": "boundary_biased"}},
    {"id": "abs", "check": "abs_inequalities", "sample": {"count": 100000},
     "tolerance": {"abs": 1e-12, "rel": 0}}
  ]
})");
  doc["sample"]["seed"] = kDefaultSeed;
  return doc;
}

SuiteConfig default_suite_config() { return parse_suite_config(default_suite_json()); }

std::vector<PlannedCase> plan_suite(const SuiteConfig& config) {
  std::vector<HoloFunction> functions = catalog();
  functions.insert(functions.end(), config.extra_functions.begin(), config.extra_functions.end());

  std::vector<PlannedCase> plan;
  for (const CaseSpec& spec : config.cases) {
    PlannedCase base;
    base.sample = spec.sample.value_or(config.sample);
    base.grid = spec.grid.value_or(config.grid);
    base.ball_dims = spec.ball_dims.empty() ? config.ball_dims : spec.ball_dims;
    base.expect = spec.expect;
    base.inequality.kind = spec.check;
    base.inequality.tolerance = spec.tolerance.value_or(config.tolerance);
    if (spec.weight) base.inequality.weight = spec.weight->build();
    if (spec.check == CheckKind::kv_factor) base.inequality.factor = 4.0 / std::numbers::pi;
    if (spec.factor) base.inequality.factor = *spec.factor;

    if (spec.id.starts_with("abs:")) {
      base.inequality.id = spec.id.substr(4);
      plan.push_back(std::move(base));
      continue;
    }

    const Weight* weight = base.inequality.weight ? &*base.inequality.weight : nullptr;
    if (spec.function == "*") {
      const std::size_t before = plan.size();
      for (const auto& f : functions) {
        if (!applicable(spec.check, f, weight)) continue;
        PlannedCase c = base;
        c.inequality.id = spec.id + "/" + f.id;
        c.inequality.function = f;
        plan.push_back(std::move(c));
      }
      if (plan.size() == before) {
        throw InvalidInput("case '" + spec.id + "': no function is admissible for " + to_string(spec.check) +
                           (weight ? " with weight " + weight->name() : std::string()));
      }
    } else {
      const HoloFunction* f = find_function(functions, spec.function);
      if (!f) throw InvalidInput("case '" + spec.id + "': unknown function '" + spec.function + "'");
      if (!applicable(spec.check, *f, weight)) {
        throw InvalidInput("case '" + spec.id + "': function '" + f->id + "' (codomain " +
                           to_string(f->codomain) + ") is not admissible for " +
                           to_string(spec.check));
      }
      base.inequality.id = spec.id;
      base.inequality.function = *f;
      plan.push_back(std::move(base));
    }
  }
  return plan;
}

SuiteReport run_suite(const SuiteConfig& config, const Execution& exec) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport suite;
  suite.seed = config.sample.seed;
  suite.threads = std::max(1u, exec.threads);
  for (const PlannedCase& planned : plan_suite(config)) {
    std::vector<VerificationReport> reports;
    if (planned.inequality.kind == CheckKind::abs_rho) {
      auto abs = verify_abs_inequalities(planned.sample, planned.ball_dims, exec,
                                         planned.inequality.tolerance);
      for (auto& r : abs) {
        r.case_id = planned.inequality.id + "/" + r.case_id.substr(4);
        reports.push_back(std::move(r));
      }
    } else {
      reports.push_back(verify(planned.inequality, planned.sample, planned.grid, exec));
    }
    for (auto& r : reports) {
      const Status wanted =
          planned.expect == Expectation::pass ? Status::pass : Status::hypothesis_not_met;
      if (r.status != wanted) {
        suite.passed = false;
        suite.failures.push_back(r.case_id + ": expected " + to_string(wanted) + ", got " +
                                 to_string(r.status));
      }
      suite.reports.push_back(std::move(r));
    }
  }
  suite.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return suite;
}

}  // namespace hypcon
