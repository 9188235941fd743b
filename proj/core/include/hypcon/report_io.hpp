#pragma once

// JSON and CSV serialization of verification reports.
//
// Suite JSON has two top-level sections: "payload" holds everything that is a
// function of config and seed, "metadata" holds timings and thread counts.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "hypcon/harness.hpp"
#include "hypcon/suite.hpp"

namespace hypcon {

inline constexpr const char* kReportSchema = "hypcon-report/1";

/// x rounded to 15 significant digits; non-finite values pass through.
double round15(double x) noexcept;
/// printf("%.15g").
std::string format15(double x);

/// Rounded number, or null for NaN/inf (JSON has neither).
nlohmann::json number_json(double x);
nlohmann::json complex_json(Complex z);

nlohmann::json report_payload(const VerificationReport& report);
nlohmann::json suite_to_json(const SuiteReport& suite);

/// Header plus one row per kept sample (needs Execution::keep_samples).
void write_samples_csv(std::ostream& out, const SuiteReport& suite);

/// Reads a report written by suite_to_json. Throws ConfigError on bad input.
nlohmann::json load_report(const std::filesystem::path& path);
/// Plain-text table: one line per case plus the overall verdict.
void print_report_summary(std::ostream& out, const nlohmann::json& report);

}  // namespace hypcon
