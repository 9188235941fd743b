#pragma once

// Sampled verification of the contraction inequalities. Each check evaluates
// lhs <= rhs at deterministic samples and reports margins rhs - lhs.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcon/catalog.hpp"
#include "hypcon/conformal.hpp"
#include "hypcon/sampling.hpp"
#include "hypcon/weights.hpp"

namespace hypcon {

enum class CheckKind {
  re_contraction,       // d_omega(Re f(z), Re f(w)) <= sigma(z, w)
  pointwise_gradient,   // omega(Re f) |f'| (1 - |z|^2) / 2 <= 1
  modulus_contraction,  // sigma(|f(z)|, |f(w)|) <= sigma(z, w)
  pavlovic,             // |f'| (1 - |z|^2) <= 1 - |f|^2
  kv_factor,            // sigma(Re f(z), Re f(w)) <= factor sigma(z, w)
  schwarz_pick,         // sigma(f(z), f(w)) <= sigma(z, w)
  abs_rho,              // rho(|z|, |w|) <= rho(z, w)
  abs_sigma,            // sigma(|z|, |w|) <= sigma(z, w)
  ball_beta,            // beta(|z|, |w|) <= beta(z, w) on B^n
};

const char* to_string(CheckKind kind) noexcept;
CheckKind check_kind_from_string(const std::string& name);

/// A sample violates when margin < -(abs + rel |rhs|).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  bool violated(double margin, double rhs) const noexcept {
    return margin < -(abs + rel * std::abs(rhs));
  }
};

struct InequalityCase {
  std::string id;
  CheckKind kind = CheckKind::re_contraction;
  PlanarDomain source = PlanarDomain::poincare_disk();
  std::optional<HoloFunction> function;
  std::optional<Weight> weight;
  double factor = 1.0;
  std::size_t ball_dim = 1;
  Tolerance tolerance{};
};

/// radial x angular points, radii evenly spaced on [0, radius_cap].
struct PolarGrid {
  std::size_t radial = 101;
  std::size_t angular = 101;
  double radius_cap = 0.999;
};

struct Execution {
  unsigned threads = 1;
  /// Keep every (z, w, lhs, rhs) for CSV export.
  bool keep_samples = false;
};

enum class Status { pass, violated, hypothesis_not_met };

const char* to_string(Status status) noexcept;

struct Violation {
  Complex z;
  std::optional<Complex> w;
  double lhs = 0.0;
  double rhs = 0.0;
};

using SampleRecord = Violation;

struct BranchStats {
  std::size_t count = 0;
  double min_margin = 0.0;
};

struct VerificationReport {
  std::string case_id;
  CheckKind kind = CheckKind::re_contraction;
  std::string function_id;
  Status status = Status::pass;
  std::size_t samples = 0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  double max_lhs = 0.0;
  /// Largest lhs / rhs-without-factor over pairs with z != w (kv_factor only).
  std::optional<double> sup_ratio;
  /// Points where f(z) == 0 (within 1e-12) and the rest; pavlovic only.
  std::optional<BranchStats> zero_branch;
  std::optional<BranchStats> nonzero_branch;
  std::vector<Violation> violations;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::string note;
  std::vector<SampleRecord> records;

  bool passed() const noexcept { return status == Status::pass; }
};

VerificationReport verify_re_contraction(const InequalityCase& c, const SampleSpec& s,
                                         const Execution& exec = {});
VerificationReport verify_pointwise_gradient(const InequalityCase& c, const PolarGrid& grid,
                                             const Execution& exec = {});
VerificationReport verify_modulus_contraction(const InequalityCase& c, const SampleSpec& s,
                                              const Execution& exec = {});
VerificationReport verify_pavlovic(const InequalityCase& c, const PolarGrid& grid,
                                   const Execution& exec = {});
/// factor defaults to 4/pi through make_kv_case.
VerificationReport verify_kv_factor(const InequalityCase& c, const SampleSpec& s,
                                    const Execution& exec = {});
VerificationReport verify_schwarz_pick(const InequalityCase& c, const SampleSpec& s,
                                       const Execution& exec = {});

/// Disk rho, disk sigma and one ball beta report per dimension in ball_dims.
std::vector<VerificationReport> verify_abs_inequalities(const SampleSpec& s,
                                                        const std::vector<std::size_t>& ball_dims,
                                                        const Execution& exec = {},
                                                        Tolerance tolerance = {1e-12, 0.0});

/// Dispatch on c.kind; sampled checks use `s`, grid checks use `grid`.
VerificationReport verify(const InequalityCase& c, const SampleSpec& s, const PolarGrid& grid,
                          const Execution& exec = {});

/// Whether f is an admissible f for the check (codomain vs. weight interval).
bool applicable(CheckKind kind, const HoloFunction& f, const Weight* weight);

InequalityCase make_re_case(const HoloFunction& f, Weight weight);
InequalityCase make_gradient_case(const HoloFunction& f, Weight weight);
InequalityCase make_modulus_case(const HoloFunction& f);
InequalityCase make_pavlovic_case(const HoloFunction& f);
InequalityCase make_kv_case(const HoloFunction& f);
InequalityCase make_schwarz_pick_case(const HoloFunction& f);

}  // namespace hypcon
