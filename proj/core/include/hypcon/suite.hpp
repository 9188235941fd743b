#pragma once

// Suite configuration (versioned JSON) and the suite runner.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypcon/harness.hpp"

namespace hypcon {

inline constexpr const char* kSuiteSchema = "hypcon-suite/1";

/// A weight named in a config: "strip", "half_plane", "omega_tilde", or a family.
struct WeightSpec {
  std::string named;
  std::optional<WeightFamily> family;

  Weight build() const;
};

enum class Expectation { pass, hypothesis_not_met };

struct CaseSpec {
  std::string id;
  CheckKind check = CheckKind::re_contraction;
  /// Catalog id, or "*" for every admissible entry.
  std::string function;
  std::optional<WeightSpec> weight;
  std::optional<double> factor;
  std::optional<SampleSpec> sample;
  std::optional<PolarGrid> grid;
  std::optional<Tolerance> tolerance;
  std::vector<std::size_t> ball_dims;
  Expectation expect = Expectation::pass;
};

enum class OutputFormat { json, csv };

struct SuiteConfig {
  SampleSpec sample{};
  PolarGrid grid{};
  std::vector<std::size_t> ball_dims{1, 2, 3};
  Tolerance tolerance{};
  std::vector<HoloFunction> extra_functions;
  std::vector<CaseSpec> cases;
  std::optional<std::filesystem::path> output_path;
  OutputFormat output_format = OutputFormat::json;
};

/// Validates the whole document and throws ConfigError with every problem found.
SuiteConfig parse_suite_config(const nlohmann::json& doc);
/// Throws ConfigError when the file is missing or not valid JSON.
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// Every check over the full catalog: 10^4 pairs per sampled case, 10^5
/// boundary-biased pairs for the 4/pi factor and the |z|, |w| inequalities.
nlohmann::json default_suite_json();
SuiteConfig default_suite_config();

/// One case after "*" expansion, with its expectation.
struct PlannedCase {
  InequalityCase inequality;
  SampleSpec sample;
  PolarGrid grid;
  std::vector<std::size_t> ball_dims;
  Expectation expect = Expectation::pass;
};

std::vector<PlannedCase> plan_suite(const SuiteConfig& config);

struct SuiteReport {
  std::vector<VerificationReport> reports;
  /// Reports whose status differs from their case's expectation.
  std::vector<std::string> failures;
  bool passed = true;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double wall_time = 0.0;
};

/// Runs all planned cases. Results are bitwise independent of exec.threads.
SuiteReport run_suite(const SuiteConfig& config, const Execution& exec = {});

}  // namespace hypcon
