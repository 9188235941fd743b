#include "hypcon/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypcon/errors.hpp"
#include "hypcon/quadrature.hpp"

namespace hypcon {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Five-point central stencils are fourth order; eps^(1/5) balances truncation
// against rounding for the first derivative and leaves the second well inside
// its rounding floor. Weights blow up at finite ends of J, where a second order
// stencil loses too much.
double difference_step(double t) { return std::pow(kEps, 0.2) * std::max(1.0, std::abs(t)); }

void require_stencil(const Interval& domain, double t, double h) {
  if (!domain.contains(t - 2.0 * h) || !domain.contains(t + 2.0 * h)) {
    throw DomainError("t is too close to an end of the weight's domain for a difference quotient");
  }
}

void require_interior(const Interval& domain, double t, const char* what) {
  if (!std::isfinite(t) || !domain.contains(t)) {
    throw InvalidInput(std::string(what) + " is not an interior point of the weight's domain");
  }
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw InvalidInput("interval requires lo < hi");
  }
  if (std::isinf(lo) && std::isinf(hi)) {
    throw InvalidInput("interval must not be the whole real line");
  }
}

bool Interval::bounded() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }

Weight::Weight(Interval domain, Fn density, std::optional<Fn> d1, std::optional<Fn> d2,
               std::optional<Fn> antiderivative, std::string name)
    : domain_(domain),
      density_(std::move(density)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      antiderivative_(std::move(antiderivative)),
      name_(std::move(name)) {
  if (!density_) throw InvalidInput("weight requires a density");
}

double Weight::d1(double t) const { return d1_ ? (*d1_)(t) : d1_numeric(t); }

double Weight::d2(double t) const { return d2_ ? (*d2_)(t) : d2_numeric(t); }

double Weight::d1_numeric(double t) const {
  const double h = difference_step(t);
  require_stencil(domain_, t, h);
  return (density_(t - 2.0 * h) - 8.0 * density_(t - h) + 8.0 * density_(t + h) - density_(t + 2.0 * h)) /
         (12.0 * h);
}

double Weight::d2_numeric(double t) const {
  const double h = difference_step(t);
  require_stencil(domain_, t, h);
  return (-density_(t - 2.0 * h) + 16.0 * density_(t - h) - 30.0 * density_(t) + 16.0 * density_(t + h) -
          density_(t + 2.0 * h)) /
         (12.0 * h * h);
}

double Weight::antiderivative(double t) const {
  if (!antiderivative_) throw DomainError("weight '" + name_ + "' has no closed-form antiderivative");
  return (*antiderivative_)(t);
}

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::sin: return "sin";
    case FamilyKind::sinh: return "sinh";
    case FamilyKind::linear: return "linear";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& name) {
  if (name == "sin") return FamilyKind::sin;
  if (name == "sinh" || name == "sh") return FamilyKind::sinh;
  if (name == "linear") return FamilyKind::linear;
  throw InvalidInput("unknown weight family '" + name + "'");
}

namespace {

// Sign of the family's denominator on the interval; zero if it vanishes or
// changes sign there.
int denominator_sign(const WeightFamily& f) {
  const Interval& J = f.domain;
  switch (f.kind) {
    case FamilyKind::linear: {
      const double a = J.lo() + f.c;
      const double b = J.hi() + f.c;
      if (a >= 0.0) return 1;
      if (b <= 0.0) return -1;
      return 0;
    }
    case FamilyKind::sinh: {
      const double a = f.c1 * J.lo() + f.c2;
      const double b = f.c1 * J.hi() + f.c2;
      if (a >= 0.0) return 1;
      if (b <= 0.0) return -1;
      return 0;
    }
    case FamilyKind::sin: {
      if (!J.bounded()) return 0;
      const double a = f.c1 * J.lo() + f.c2;
      const double b = f.c1 * J.hi() + f.c2;
      // (a, b) must fit between consecutive zeros m*pi and (m+1)*pi; the open
      // interval may touch them.
      constexpr double pi = std::numbers::pi;
      const double m = std::floor(0.5 * (a + b) / pi);
      const double slack = 8.0 * kEps * std::max({1.0, std::abs(a), std::abs(b)});
      if (a < m * pi - slack || b > (m + 1.0) * pi + slack) return 0;
      return static_cast<long long>(m) % 2 == 0 ? 1 : -1;
    }
  }
  return 0;
}

}  // namespace

void validate_family(const WeightFamily& f) {
  if (!(f.k >= 1.0) || !std::isfinite(f.k)) throw InvalidInput("weight family requires k >= 1");
  if (f.kind != FamilyKind::linear && (!(f.c1 > 0.0) || !std::isfinite(f.c1))) {
    throw InvalidInput("weight family requires C1 > 0");
  }
  if (!std::isfinite(f.c2) || !std::isfinite(f.c)) {
    throw InvalidInput("weight family constants must be finite");
  }
  if (denominator_sign(f) == 0) {
    throw InvalidInput(std::string("denominator of the ") + to_string(f.kind) +
                       " family vanishes inside the interval");
  }
}

Weight family_weight(const WeightFamily& f) {
  validate_family(f);
  const double s = denominator_sign(f);
  const double k = f.k;
  const double c1 = f.c1;
  const double c2 = f.c2;
  const double c = f.c;
  const std::string name = std::string(to_string(f.kind)) + "-family";

  switch (f.kind) {
    case FamilyKind::sin:
      return Weight(
          f.domain,
          [=](double t) { return c1 / (k * s * std::sin(c1 * t + c2)); },
          [=](double t) {
            const double u = c1 * t + c2;
            const double sn = std::sin(u);
            return -c1 * c1 * std::cos(u) / (k * s * sn * sn);
          },
          [=](double t) {
            const double u = c1 * t + c2;
            const double sn = std::sin(u);
            const double cs = std::cos(u);
            return c1 * c1 * c1 * (1.0 + cs * cs) / (k * s * sn * sn * sn);
          },
          [=](double t) { return std::log(std::abs(std::tan(0.5 * (c1 * t + c2)))) / (k * s); },
          name);
    case FamilyKind::sinh:
      return Weight(
          f.domain,
          [=](double t) { return c1 / (k * s * std::sinh(c1 * t + c2)); },
          [=](double t) {
            const double u = c1 * t + c2;
            const double sn = std::sinh(u);
            return -c1 * c1 * std::cosh(u) / (k * s * sn * sn);
          },
          [=](double t) {
            const double u = c1 * t + c2;
            const double sn = std::sinh(u);
            const double cs = std::cosh(u);
            return c1 * c1 * c1 * (1.0 + cs * cs) / (k * s * sn * sn * sn);
          },
          [=](double t) { return std::log(std::abs(std::tanh(0.5 * (c1 * t + c2)))) / (k * s); },
          name);
    case FamilyKind::linear:
      return Weight(
          f.domain, [=](double t) { return 1.0 / (k * s * (t + c)); },
          [=](double t) { return -1.0 / (k * s * (t + c) * (t + c)); },
          [=](double t) { return 2.0 / (k * s * (t + c) * (t + c) * (t + c)); },
          [=](double t) { return std::log(std::abs(t + c)) / (k * s); }, name);
  }
  throw InvalidInput("unknown weight family");
}

WeightFamily strip_family() {
  return WeightFamily{FamilyKind::sin, 1.0, std::numbers::pi / 2, -std::numbers::pi / 2, 0.0,
                      Interval(-1.0, 1.0)};
}

WeightFamily half_plane_family() {
  return WeightFamily{FamilyKind::linear, 1.0, 1.0, 0.0, 0.0,
                      Interval(0.0, std::numeric_limits<double>::infinity())};
}

Weight strip_weight() {
  // Same closed form as family_weight(strip_family()), written through cos so
  // that the density is exactly symmetric in t.
  constexpr double h = std::numbers::pi / 2;
  return Weight(
      Interval(-1.0, 1.0), [](double t) { return h / std::cos(h * t); },
      [](double t) {
        const double cs = std::cos(h * t);
        return h * h * std::sin(h * t) / (cs * cs);
      },
      [](double t) {
        const double cs = std::cos(h * t);
        const double sn = std::sin(h * t);
        return h * h * h * (1.0 + sn * sn) / (cs * cs * cs);
      },
      [](double t) { return std::log(std::tan(0.5 * h * t + 0.25 * std::numbers::pi)); },
      "strip");
}

Weight half_plane_weight() {
  Weight w = family_weight(half_plane_family());
  return Weight(
      w.domain(), [](double t) { return 1.0 / t; }, [](double t) { return -1.0 / (t * t); },
      [](double t) { return 2.0 / (t * t * t); }, [](double t) { return std::log(t); },
      "half-plane");
}

Weight omega_tilde_weight() {
  return Weight(
      Interval(-1.0, 1.0), [](double t) { return 2.0 / (1.0 - t * t); },
      [](double t) {
        const double q = 1.0 - t * t;
        return 4.0 * t / (q * q);
      },
      [](double t) {
        const double q = 1.0 - t * t;
        return (4.0 + 12.0 * t * t) / (q * q * q);
      },
      [](double t) { return 2.0 * std::atanh(t); }, "omega-tilde");
}

double omega_distance(const Weight& weight, double a, double b) {
  require_interior(weight.domain(), a, "omega_distance endpoint a");
  require_interior(weight.domain(), b, "omega_distance endpoint b");
  if (a == b) return 0.0;
  if (weight.has_antiderivative()) {
    return std::abs(weight.antiderivative(b) - weight.antiderivative(a));
  }
  return omega_distance_quadrature(weight, a, b);
}

double omega_distance_quadrature(const Weight& weight, double a, double b) {
  require_interior(weight.domain(), a, "omega_distance endpoint a");
  require_interior(weight.domain(), b, "omega_distance endpoint b");
  if (a == b) return 0.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::abs(quadrature::integrate([&](double t) { return weight(t); }, lo, hi).value);
}

double curvature_k(const Weight& weight, double t) {
  require_interior(weight.domain(), t, "curvature_k argument");
  const double w = weight(t);
  const double w1 = weight.d1(t);
  const double w2 = weight.d2(t);
  const double w_sq = w * w;
  return (w1 * w1 - w * w2) / (w_sq * w_sq);
}

double curvature_k_numeric(const Weight& weight, double t) {
  require_interior(weight.domain(), t, "curvature_k argument");
  const double w = weight(t);
  const double w1 = weight.d1_numeric(t);
  const double w2 = weight.d2_numeric(t);
  const double w_sq = w * w;
  return (w1 * w1 - w * w2) / (w_sq * w_sq);
}

std::vector<double> grid_points(const Interval& interval, const GridSpec& grid) {
  if (grid.points < 2) throw InvalidInput("grid requires at least two points");
  if (!(grid.shrink > 0.0 && grid.shrink < 0.5)) throw InvalidInput("grid shrink must be in (0, 1/2)");
  std::vector<double> out(grid.points);
  const double n = static_cast<double>(grid.points - 1);
  const double s0 = grid.shrink;
  const double s1 = 1.0 - grid.shrink;
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double s = s0 + (s1 - s0) * (static_cast<double>(i) / n);
    if (interval.bounded()) {
      out[i] = interval.lo() + (interval.hi() - interval.lo()) * s;
    } else if (std::isfinite(interval.lo())) {
      out[i] = interval.lo() + s / (1.0 - s);
    } else {
      const double r = 1.0 - s;
      out[i] = interval.hi() - r / (1.0 - r);
    }
  }
  return out;
}

BoundReport verify_curvature_bound(const Weight& weight, const GridSpec& grid, double tol) {
  BoundReport report;
  report.tolerance = tol;
  report.max_k = -std::numeric_limits<double>::infinity();
  for (double t : grid_points(weight.domain(), grid)) {
    const double k = curvature_k(weight, t);
    ++report.points;
    if (k > report.max_k || std::isnan(k)) {
      report.max_k = k;
      report.argmax = t;
    }
  }
  report.satisfied = report.max_k <= -1.0 + tol;
  return report;
}

ComparisonReport compare_weights(const Weight& upper, const Weight& lower, double factor,
                                 const GridSpec& grid) {
  const double lo = std::max(upper.domain().lo(), lower.domain().lo());
  const double hi = std::min(upper.domain().hi(), lower.domain().hi());
  ComparisonReport report;
  report.factor = factor;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (double t : grid_points(Interval(lo, hi), grid)) {
    const double ratio = upper(t) / lower(t);
    ++report.points;
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.argmin = t;
    }
  }
  // factor * lower <= upper  <=>  ratio >= factor, up to rounding in the ratio.
  report.passed = report.min_ratio >= factor * (1.0 - 4.0 * kEps);
  return report;
}

}  // namespace hypcon
