#pragma once

// Weights on real intervals: the omega-distance, the curvature quantity
// k_omega = (omega'^2 - omega omega'') / omega^4 and the closed-form families
// solving k_omega = -k^2.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypcon {

/// Open interval (lo, hi); either end may be infinite but not both.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool bounded() const noexcept;
  bool contains(double t) const noexcept { return t > lo_ && t < hi_; }
  /// True when this interval lies inside `other`.
  bool within(const Interval& other) const noexcept {
    return lo_ >= other.lo_ && hi_ <= other.hi_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// A positive density on an interval. Derivatives and the antiderivative are
/// optional; missing derivatives fall back to central differences and a missing
/// antiderivative to adaptive quadrature.
class Weight {
 public:
  using Fn = std::function<double(double)>;

  Weight(Interval domain, Fn density, std::optional<Fn> d1 = std::nullopt,
         std::optional<Fn> d2 = std::nullopt, std::optional<Fn> antiderivative = std::nullopt,
         std::string name = "weight");

  const Interval& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double t) const { return density_(t); }
  double density(double t) const { return density_(t); }

  bool has_analytic_derivatives() const noexcept { return d1_.has_value() && d2_.has_value(); }
  bool has_antiderivative() const noexcept { return antiderivative_.has_value(); }

  /// omega'(t): analytic when supplied, central difference otherwise.
  double d1(double t) const;
  /// omega''(t): analytic when supplied, central difference otherwise.
  double d2(double t) const;
  double d1_numeric(double t) const;
  double d2_numeric(double t) const;
  /// Throws DomainError when no antiderivative was supplied.
  double antiderivative(double t) const;

 private:
  Interval domain_;
  Fn density_;
  std::optional<Fn> d1_;
  std::optional<Fn> d2_;
  std::optional<Fn> antiderivative_;
  std::string name_;
};

enum class FamilyKind { sin, sinh, linear };

const char* to_string(FamilyKind kind) noexcept;
FamilyKind family_kind_from_string(const std::string& name);

/// Positive solutions of k_omega = -k^2:
///   sin:    C1 / (k |sin(C1 t + C2)|)
///   sinh:   C1 / (k |sinh(C1 t + C2)|)
///   linear: 1 / (k |t + C|)
struct WeightFamily {
  FamilyKind kind = FamilyKind::linear;
  double k = 1.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double c = 0.0;
  Interval domain{0.0, 1.0};
};

/// Throws InvalidInput unless k >= 1, C1 > 0 and the family's denominator keeps
/// one sign on the whole interval.
void validate_family(const WeightFamily& family);

/// Weight with analytic omega', omega'' and antiderivative.
Weight family_weight(const WeightFamily& family);

/// (pi/2) / cos(pi t / 2) on (-1, 1): the sin family with k = 1, C1 = pi/2, C2 = -pi/2.
WeightFamily strip_family();
/// 1/t on (0, inf): the linear family with k = 1, C = 0.
WeightFamily half_plane_family();
Weight strip_weight();
Weight half_plane_weight();
/// 2 / (1 - t^2) on (-1, 1); its omega-distance is the hyperbolic distance of the
/// disk restricted to the diameter. k = -(1 + t^2)/2, so it is not a k <= -1 weight.
Weight omega_tilde_weight();

/// d_omega(a, b) = |integral_a^b omega|. Uses the antiderivative when present.
double omega_distance(const Weight& weight, double a, double b);
/// Same distance, always through adaptive quadrature.
double omega_distance_quadrature(const Weight& weight, double a, double b);

/// k_omega(t) from the weight's derivatives (analytic when available).
double curvature_k(const Weight& weight, double t);
/// k_omega(t) with both derivatives taken by central differences.
double curvature_k_numeric(const Weight& weight, double t);

/// Uniform grid over the interval shrunk by 1e-6 of its span at each end.
/// Infinite ends are handled through s -> s / (1 - s) on (0, 1).
struct GridSpec {
  std::size_t points = 1001;
  double shrink = 1e-6;
};

std::vector<double> grid_points(const Interval& interval, const GridSpec& grid);

struct BoundReport {
  double max_k = 0.0;
  double argmax = 0.0;
  double tolerance = 0.0;
  std::size_t points = 0;
  bool satisfied = false;
};

/// Checks k_omega <= -1 + tol over the grid.
BoundReport verify_curvature_bound(const Weight& weight, const GridSpec& grid = {},
                                   double tol = 1e-8);

struct ComparisonReport {
  double factor = 1.0;
  double min_ratio = 0.0;
  double argmin = 0.0;
  std::size_t points = 0;
  bool passed = false;
};

/// Checks factor * lower <= upper pointwise, reporting min(upper / lower).
/// The grid is laid over the intersection of both domains.
ComparisonReport compare_weights(const Weight& upper, const Weight& lower, double factor,
                                 const GridSpec& grid = {});

}  // namespace hypcon
