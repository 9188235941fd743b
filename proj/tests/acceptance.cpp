// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hypcon/ball.hpp"
#include "hypcon/conformal.hpp"
#include "hypcon/harness.hpp"
#include "hypcon/liouville.hpp"
#include "hypcon/report_io.hpp"
#include "hypcon/suite.hpp"

using namespace hypcon;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

WeightFamily sinh_family(double c1, double c2, Interval j) {
  WeightFamily f;
  f.kind = FamilyKind::sinh;
  f.c1 = c1;
  f.c2 = c2;
  f.domain = j;
  return f;
}

WeightFamily linear_family(double c, Interval j) {
  WeightFamily f;
  f.kind = FamilyKind::linear;
  f.c = c;
  f.domain = j;
  return f;
}

SuiteReport run_cases(json cases, std::size_t count = 10000, unsigned threads = 4) {
  json doc = {{"schema", kSuiteSchema}, {"sample", {{"count", count}}}, {"cases", std::move(cases)}};
  Execution exec;
  exec.threads = threads;
  return run_suite(parse_suite_config(doc), exec);
}

double min_margin(const SuiteReport& s) {
  double m = INFINITY;
  for (const auto& r : s.reports) m = std::min(m, r.min_margin);
  return m;
}

Outcome closed_form_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::size_t pairs = 0;
  const std::vector<std::pair<WeightFamily, Interval>> families = {
      {strip_family(), Interval(-1.0 + 1e-3, 1.0 - 1e-3)},
      {sinh_family(1.0, 1.0, Interval(-0.9, 3.0)), Interval(-0.899, 3.0)},
      {half_plane_family(), Interval(1e-3, 50.0)},
  };
  for (const auto& [family, range] : families) {
    const Weight w = family_weight(family);
    std::uniform_real_distribution<double> u(range.lo(), range.hi());
    for (int i = 0; i < 50; ++i, ++pairs) {
      const double a = u(rng);
      const double b = u(rng);
      const double closed = std::abs(w.antiderivative(b) - w.antiderivative(a));
      worst = std::max(worst, std::abs(omega_distance_quadrature(w, a, b) - closed));
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-9 && t < 5.0, "max |quadrature - antiderivative| = " + fmt("%.3g", worst) + " over " +
                                       std::to_string(pairs) + " pairs, " + fmt("%.2f s", t)};
}

Outcome curvature_identities() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double analytic = 0.0;
  double numeric = 0.0;
  for (int i = 0; i < 20; ++i) {
    WeightFamily f;
    f.k = 1.0 + u(rng);
    switch (i % 3) {
      case 0:
        f.kind = FamilyKind::sin;
        f.c1 = 0.5 + 1.5 * u(rng);
        f.c2 = -1.0 + 2.0 * u(rng);
        f.domain = Interval((0.02 - f.c2) / f.c1, (pi - 0.02 - f.c2) / f.c1);
        break;
      case 1:
        f = sinh_family(0.5 + 1.5 * u(rng), 0.1 + u(rng), Interval(0.0, 0.5 + 2.5 * u(rng)));
        f.k = 1.0 + u(rng);
        break;
      default:
        f = linear_family(0.1 + 2.0 * u(rng), Interval(0.0, 1.0 + 4.0 * u(rng)));
        f.k = 1.0 + u(rng);
    }
    validate_family(f);
    const Weight w = family_weight(f);
    const double k2 = f.k * f.k;
    for (double t : grid_points(f.domain, {})) analytic = std::max(analytic, std::abs(curvature_k(w, t) + k2));
    // difference quotients away from the singular ends of the interval
    for (double t : grid_points(f.domain, {1001, 0.05})) {
      numeric = std::max(numeric, std::abs(curvature_k_numeric(w, t) + k2) / k2);
    }
  }
  const double control = curvature_k(omega_tilde_weight(), 0.0);
  const bool ok = analytic < 1e-8 && numeric < 1e-5 && std::abs(control + 0.5) < 1e-8;
  return {ok, "analytic max |k + k^2| = " + fmt("%.3g", analytic) + ", differences " + fmt("%.3g", numeric) +
                  ", k_tilde(0) = " + fmt("%.15g", control)};
}

Outcome liouville() {
  double sup = 0.0;
  double drift = 0.0;
  const std::vector<std::pair<WeightFamily, double>> cases = {
      {strip_family(), -0.5}, {sinh_family(1.0, 1.0, Interval(-0.9, 3.0)), 0.0}, {linear_family(1.0, Interval(-0.9, 3.0)), 0.0}};
  for (const auto& [f, t0] : cases) {
    const Trajectory traj = solve_liouville(closed_form_state(f, t0), t0 + 1.0, 1e-10);
    if (traj.blow_up() || traj.t_end() != t0 + 1.0) return {false, "trajectory stopped early"};
    for (int i = 0; i <= 2000; ++i) {
      const double t = t0 + i / 2000.0;
      sup = std::max(sup, std::abs(traj.at(t).lambda - closed_form_lambda(f, t)));
    }
    const double e0 = first_integral(traj.samples().front());
    for (const auto& s : traj.samples()) drift = std::max(drift, std::abs(first_integral(s) - e0));
  }
  return {sup < 1e-6 && drift < 1e-8,
          "sup |lambda - exact| = " + fmt("%.3g", sup) + ", first integral drift = " + fmt("%.3g", drift)};
}

Outcome distance_engine() {
  SampleSpec spec;
  spec.count = 100;
  spec.radius_cap = 0.95;
  DistanceOptions forced;
  forced.force_variational = true;
  double variational = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const PointPair p = sample_disk_pair(spec, i);
    const double s = hyperbolic_sigma(p.z, p.w);
    if (s == 0.0) continue;
    const double v = distance(PlanarDomain::poincare_disk(), p.z.value(), p.w.value(), forced).value;
    variational = std::max(variational, std::abs(v - s) / s);
  }
  spec.count = 10000;
  spec.radius_cap = 0.999;
  double cayley_gap = 0.0;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const PointPair p = sample_disk_pair(spec, i);
    const double s = hyperbolic_sigma(p.z, p.w);
    cayley_gap = std::max(cayley_gap, std::abs(half_plane_distance(cayley(p.z.value()), cayley(p.w.value())) - s) /
                                          std::max(1.0, s));
  }
  const Complex zeta{0.3, 0.2};
  const Complex dir = std::polar(1.0, 0.7);
  bool monotone = true;
  double secant = 1.0;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    const double h = density(PlanarDomain::poincare_disk(), zeta);
    const double err = std::abs(distance(PlanarDomain::poincare_disk(), zeta, zeta + eps * dir).value / eps - h) / h;
    monotone = monotone && err < secant;
    secant = err;
  }
  const bool ok = variational < 1e-3 && cayley_gap < 1e-9 && monotone && secant < 1e-2;
  return {ok, "variational rel err = " + fmt("%.3g", variational) + ", Cayley gap = " + fmt("%.3g", cayley_gap) +
                  ", secant rel err = " + fmt("%.3g", secant) + (monotone ? " (monotone)" : " (not monotone)")};
}

Outcome main_theorem() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport s = run_cases({{{"id", "strip"}, {"check", "re_contraction"}, {"function", "*"}, {"weight", "strip"}},
                                   {{"id", "half_plane"}, {"check", "re_contraction"}, {"function", "*"},
                                    {"weight", "half_plane"}}});
  const double t = seconds_since(t0);
  const double m = min_margin(s);
  return {s.passed && m >= -1e-9 && t < 60.0,
          "min margin = " + fmt("%.3g", m) + " over " + std::to_string(s.reports.size()) + " cases x 10^4 pairs, " +
              fmt("%.2f s", t)};
}

Outcome surface_gradient() {
  const SuiteReport s = run_cases(
      {{{"id", "strip"}, {"check", "pointwise_gradient"}, {"function", "*"}, {"weight", "strip"}},
       {{"id", "half_plane"}, {"check", "pointwise_gradient"}, {"function", "*"}, {"weight", "half_plane"}}});
  double worst = 0.0;
  for (const auto& r : s.reports) worst = std::max(worst, r.max_lhs);
  return {s.passed && worst <= 1.0 + 1e-9,
          "max lhs = " + fmt("%.15g", worst) + " over " + std::to_string(s.reports.size()) + " cases, 101x101 grid"};
}

Outcome modulus() {
  const SuiteReport s = run_cases({{{"id", "modulus"}, {"check", "modulus_contraction"}, {"function", "*"}},
                                   {{"id", "pavlovic"}, {"check", "pavlovic"}, {"function", "*"}}});
  const double m = min_margin(s);
  const auto all = catalog();
  Execution keep;
  keep.keep_samples = true;
  double equality = 0.0;
  for (const char* id : {"identity", "blaschke_factor"}) {
    const auto r = verify_pavlovic(make_pavlovic_case(*find_function(all, id)), {}, keep);
    for (const auto& x : r.records) equality = std::max(equality, std::abs(x.rhs - x.lhs));
  }
  return {s.passed && m >= -1e-9 && equality < 1e-10,
          "min margin = " + fmt("%.3g", m) + ", automorphism max |margin| = " + fmt("%.3g", equality)};
}

Outcome moduli_inequalities() {
  SampleSpec spec;
  spec.count = 100000;
  const auto reports = verify_abs_inequalities(spec, {1, 2, 3}, {4, false});
  double m = INFINITY;
  bool ok = true;
  for (const auto& r : reports) {
    m = std::min(m, r.min_margin);
    ok = ok && r.passed();
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const PointPair p = sample_disk_pair(spec, i);
    const BallPoint z(ComplexVector{p.z.value()});
    const BallPoint w(ComplexVector{p.w.value()});
    gap = std::max({gap, std::abs(ball_rho(z, w) - pseudo_hyperbolic(p.z, p.w)),
                    std::abs(ball_one_minus_rho_sq(z, w) - one_minus_phi_product(p.z, p.w)),
                    std::abs(ball_mobius(z, w).coords()[0] - mobius_disk(p.z, p.w).value()),
                    std::abs(bergman_beta(z, w) - hyperbolic_sigma(p.z, p.w))});
  }
  return {ok && m >= -1e-12 && gap < 1e-14,
          "min margin = " + fmt("%.3g", m) + " over 10^5 pairs (rho, sigma, beta n=1,2,3), n=1 vs disk gap = " +
              fmt("%.3g", gap)};
}

Outcome kv_factor() {
  json c = {{{"id", "kv"}, {"check", "kv_factor"}, {"function", "*"}, {"sample", {{"count", 100000}, {"scheme", "boundary_biased"}}}}};
  const SuiteReport s = run_cases(c);
  double sup = 0.0;
  for (const auto& r : s.reports) {
    if (r.function_id.starts_with("strip_map") && r.sup_ratio) sup = std::max(sup, *r.sup_ratio);
  }
  return {s.passed && sup <= 4.0 / pi + 1e-9,
          "empirical sup ratio = " + fmt("%.15g", sup) + " (4/pi = " + fmt("%.15g", 4.0 / pi) + ")"};
}

Outcome weight_comparison() {
  // (-1 + 1e-6, 1 - 1e-6) is a shrink of 5e-7 of the span 2
  const ComparisonReport r = compare_weights(strip_weight(), omega_tilde_weight(), pi / 4.0, {10000, 5e-7});
  return {r.passed && std::abs(r.min_ratio - pi / 4.0) < 1e-6,
          "min ratio = " + fmt("%.15g", r.min_ratio) + " at t = " + fmt("%.3g", r.argmin)};
}

Outcome determinism() {
  const SuiteConfig config = default_suite_config();
  Execution one;
  Execution many;
  many.threads = 8;
  const json a = suite_to_json(run_suite(config, one));
  const json b = suite_to_json(run_suite(config, many));
  const std::string pa = a["payload"].dump();
  const std::string pb = b["payload"].dump();
  return {pa == pb, "payload bytes " + std::to_string(pa.size()) + (pa == pb ? ", identical" : ", DIFFERENT") +
                        " for 1 and 8 threads"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form d_omega vs quadrature", closed_form_consistency},
      {"curvature identities", curvature_identities},
      {"Liouville ODE vs closed forms", liouville},
      {"distance engine", distance_engine},
      {"real-part contraction", main_theorem},
      {"pointwise gradient bound", surface_gradient},
      {"modulus contraction", modulus},
      {"moduli inequalities, disk and ball", moduli_inequalities},
      {"4/pi factor", kv_factor},
      {"(pi/4) omega_tilde <= omega", weight_comparison},
      {"determinism across thread counts", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] AC%02d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d acceptance criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
