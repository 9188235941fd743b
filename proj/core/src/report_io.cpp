#include "hypcon/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "hypcon/errors.hpp"

namespace hypcon {

using nlohmann::json;

double round15(double x) noexcept {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string format15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

json complex_json(Complex z) { return json::array({number_json(z.real()), number_json(z.imag())}); }

namespace {

json branch_json(const BranchStats& b) {
  return {{"count", b.count}, {"min_margin", number_json(b.min_margin)}};
}

json violation_json(const Violation& v) {
  json j = {{"z", complex_json(v.z)}, {"lhs", number_json(v.lhs)}, {"rhs", number_json(v.rhs)}};
  j["w"] = v.w ? complex_json(*v.w) : json(nullptr);
  return j;
}

}  // namespace

json report_payload(const VerificationReport& r) {
  json j = {
      {"case_id", r.case_id},
      {"check", to_string(r.kind)},
      {"function", r.function_id},
      {"status", to_string(r.status)},
      {"samples", r.samples},
      {"seed", r.seed},
      {"min_margin", number_json(r.min_margin)},
      {"mean_margin", number_json(r.mean_margin)},
      {"max_lhs", number_json(r.max_lhs)},
  };
  if (r.sup_ratio) j["sup_ratio"] = number_json(*r.sup_ratio);
  if (r.zero_branch) j["zero_branch"] = branch_json(*r.zero_branch);
  if (r.nonzero_branch) j["nonzero_branch"] = branch_json(*r.nonzero_branch);
  if (!r.note.empty()) j["note"] = r.note;
  j["violation_count"] = r.violations.size();
  json vs = json::array();
  for (const auto& v : r.violations) vs.push_back(violation_json(v));
  j["violations"] = std::move(vs);
  return j;
}

json suite_to_json(const SuiteReport& suite) {
  json cases = json::array();
  json timings = json::object();
  for (const auto& r : suite.reports) {
    cases.push_back(report_payload(r));
    timings[r.case_id] = r.wall_time;
  }
  json payload = {
      {"seed", suite.seed},
      {"passed", suite.passed},
      {"failures", suite.failures},
      {"cases", std::move(cases)},
  };
  json metadata = {
      {"wall_time", suite.wall_time},
      {"threads", suite.threads},
      {"case_wall_time", std::move(timings)},
  };
  return {{"schema", kReportSchema}, {"payload", std::move(payload)}, {"metadata", std::move(metadata)}};
}

void write_samples_csv(std::ostream& out, const SuiteReport& suite) {
  out << "case_id,z_re,z_im,w_re,w_im,lhs,rhs,margin\n";
  for (const auto& r : suite.reports) {
    for (const auto& s : r.records) {
      out << r.case_id << ',' << format15(s.z.real()) << ',' << format15(s.z.imag()) << ',';
      if (s.w) {
        out << format15(s.w->real()) << ',' << format15(s.w->imag());
      } else {
        out << ',';
      }
      out << ',' << format15(s.lhs) << ',' << format15(s.rhs) << ',' << format15(s.rhs - s.lhs)
          << '\n';
    }
  }
}

json load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read report '" + path.string() + "'"});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError({"'" + path.string() + "' is not valid JSON: " + e.what()});
  }
  std::vector<std::string> errors;
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema) {
    errors.push_back("/schema: expected \"" + std::string(kReportSchema) + "\"");
  } else if (!doc.contains("payload") || !doc["payload"].contains("cases") ||
             !doc["payload"]["cases"].is_array()) {
    errors.push_back("/payload/cases: missing");
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return doc;
}

void print_report_summary(std::ostream& out, const json& report) {
  const auto text = [](const json& v) {
    return v.is_number() ? format15(v.get<double>()) : std::string("null");
  };
  const json& payload = report.at("payload");
  std::size_t width = 7;
  for (const auto& c : payload.at("cases")) {
    width = std::max(width, c.at("case_id").get<std::string>().size());
  }
  out << std::left << std::setw(static_cast<int>(width) + 2) << "case" << std::setw(20) << "status"
      << std::setw(10) << "samples" << std::setw(24) << "min_margin" << "violations\n";
  for (const auto& c : payload.at("cases")) {
    out << std::setw(static_cast<int>(width) + 2) << c.at("case_id").get<std::string>()
        << std::setw(20) << c.at("status").get<std::string>() << std::setw(10)
        << c.at("samples").get<std::size_t>() << std::setw(24) << text(c.at("min_margin"))
        << c.value("violation_count", std::size_t{0});
    if (c.contains("sup_ratio")) out << "  sup_ratio=" << text(c["sup_ratio"]);
    out << '\n';
  }
  out << (payload.value("passed", false) ? "PASS" : "FAIL") << " (" << payload.at("cases").size()
      << " cases, seed " << payload.value("seed", std::uint64_t{0}) << ")\n";
}

}  // namespace hypcon
