#include "hypcon/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "hypcon/ball.hpp"
#include "hypcon/errors.hpp"

namespace hypcon {

const char* to_string(CheckKind kind) noexcept {
  switch (kind) {
    case CheckKind::re_contraction: return "re_contraction";
    case CheckKind::pointwise_gradient: return "pointwise_gradient";
    case CheckKind::modulus_contraction: return "modulus_contraction";
    case CheckKind::pavlovic: return "pavlovic";
    case CheckKind::kv_factor: return "kv_factor";
    case CheckKind::schwarz_pick: return "schwarz_pick";
    case CheckKind::abs_rho: return "abs_rho";
    case CheckKind::abs_sigma: return "abs_sigma";
    case CheckKind::ball_beta: return "ball_beta";
  }
  return "?";
}

CheckKind check_kind_from_string(const std::string& name) {
  for (CheckKind k : {CheckKind::re_contraction, CheckKind::pointwise_gradient,
                      CheckKind::modulus_contraction, CheckKind::pavlovic, CheckKind::kv_factor,
                      CheckKind::schwarz_pick, CheckKind::abs_rho, CheckKind::abs_sigma,
                      CheckKind::ball_beta}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidInput("unknown check '" + name + "'");
}

const char* to_string(Status status) noexcept {
  switch (status) {
    case Status::pass: return "pass";
    case Status::violated: return "violated";
    case Status::hypothesis_not_met: return "hypothesis_not_met";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZeroBranch = 1e-12;

struct Eval {
  Complex z;
  std::optional<Complex> w;
  double lhs = 0.0;
  double rhs = 0.0;
  // lhs / ratio_den enters sup_ratio when ratio_den > 0
  double ratio_den = kNaN;
  bool zero_branch = false;
  bool failed = false;
  std::string error;
};

// Evaluates fn(i) for i in [0, count) over `threads` workers. Results are
// stored by index, so the reduction afterwards is independent of the split.
template <class Fn>
std::vector<Eval> evaluate_all(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<Eval> out(count);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        out[i].failed = true;
        out[i].lhs = std::numeric_limits<double>::infinity();
        out[i].rhs = kNaN;
        out[i].error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    work(0, count);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n);
  const std::size_t chunk = (count + n - 1) / n;
  for (unsigned t = 0; t < n; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  pool.clear();  // join
  return out;
}

VerificationReport summarise(VerificationReport report, const std::vector<Eval>& evals,
                             const Tolerance& tol, const Execution& exec) {
  report.samples = evals.size();
  report.min_margin = std::numeric_limits<double>::infinity();
  report.max_lhs = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double sup_ratio = -std::numeric_limits<double>::infinity();
  bool any_ratio = false;
  BranchStats zero{0, std::numeric_limits<double>::infinity()};
  BranchStats nonzero{0, std::numeric_limits<double>::infinity()};
  for (const Eval& e : evals) {
    // failed evaluations count as violations with margin -inf
    const double margin = e.failed ? -std::numeric_limits<double>::infinity() : e.rhs - e.lhs;
    sum += margin;
    report.min_margin = std::min(report.min_margin, margin);
    report.max_lhs = std::max(report.max_lhs, e.lhs);
    if (e.failed || tol.violated(margin, e.rhs)) {
      report.violations.push_back({e.z, e.w, e.lhs, e.rhs});
      if (e.failed && report.note.empty()) report.note = "evaluation failed: " + e.error;
    }
    if (e.ratio_den > 0.0) {
      any_ratio = true;
      sup_ratio = std::max(sup_ratio, e.lhs / e.ratio_den);
    }
    BranchStats& branch = e.zero_branch ? zero : nonzero;
    ++branch.count;
    branch.min_margin = std::min(branch.min_margin, margin);
    if (exec.keep_samples) report.records.push_back({e.z, e.w, e.lhs, e.rhs});
  }
  report.mean_margin = evals.empty() ? kNaN : sum / static_cast<double>(evals.size());
  if (any_ratio) report.sup_ratio = sup_ratio;
  if (report.kind == CheckKind::pavlovic) {
    if (zero.count == 0) zero.min_margin = kNaN;
    if (nonzero.count == 0) nonzero.min_margin = kNaN;
    report.zero_branch = zero;
    report.nonzero_branch = nonzero;
  }
  report.status = report.violations.empty() ? Status::pass : Status::violated;
  return report;
}

VerificationReport start(const InequalityCase& c) {
  VerificationReport r;
  r.case_id = c.id;
  r.kind = c.kind;
  if (c.function) r.function_id = c.function->id;
  return r;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const HoloFunction& require_function(const InequalityCase& c) {
  if (!c.function) throw InvalidInput("case '" + c.id + "' requires a function");
  return *c.function;
}

const Weight& require_weight(const InequalityCase& c) {
  if (!c.weight) throw InvalidInput("case '" + c.id + "' requires a weight");
  return *c.weight;
}

void require_disk_source(const InequalityCase& c) {
  if (c.source.kind() != DomainKind::poincare_disk) {
    throw InvalidInput("case '" + c.id + "': only the Poincare disk is supported as source");
  }
}

void require_applicable(const InequalityCase& c) {
  const HoloFunction& f = require_function(c);
  if (!applicable(c.kind, f, c.weight ? &*c.weight : nullptr)) {
    throw InvalidInput("case '" + c.id + "': function '" + f.id + "' with codomain " +
                       to_string(f.codomain) + " is not admissible for " + to_string(c.kind));
  }
}

// Both Re-part checks need k_omega <= -1 on the weight's interval; when it fails
// the case is reported as hypothesis_not_met rather than as a violation.
std::optional<VerificationReport> gate_on_curvature(const InequalityCase& c) {
  const BoundReport bound = verify_curvature_bound(require_weight(c));
  if (bound.satisfied) return std::nullopt;
  VerificationReport r = start(c);
  r.status = Status::hypothesis_not_met;
  r.min_margin = kNaN;
  r.mean_margin = kNaN;
  r.max_lhs = kNaN;
  r.note = "weight '" + c.weight->name() + "' has max k_omega = " + std::to_string(bound.max_k) +
           " > -1 at t = " + std::to_string(bound.argmax);
  return r;
}

Complex grid_point(const PolarGrid& grid, std::size_t index) {
  const std::size_t i = index / grid.angular;
  const std::size_t j = index % grid.angular;
  const double r = grid.radial > 1 ? grid.radius_cap * static_cast<double>(i) /
                                         static_cast<double>(grid.radial - 1)
                                   : 0.0;
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(grid.angular);
  return std::polar(r, theta);
}

void validate_grid(const PolarGrid& grid) {
  if (grid.radial < 1 || grid.angular < 1) throw InvalidInput("polar grid must be non-empty");
  if (!(grid.radius_cap > 0.0 && grid.radius_cap <= 1.0 - kBoundaryGuard)) {
    throw InvalidInput("grid radius_cap must lie in (0, 1 - boundary_guard]");
  }
}

template <class Fn>
VerificationReport run_pairs(const InequalityCase& c, const SampleSpec& s, const Execution& exec,
                             Fn&& pair_eval) {
  s.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto evals = evaluate_all(s.count, exec.threads, [&](std::size_t i) {
    const PointPair p = sample_disk_pair(s, i);
    Eval e = pair_eval(p.z, p.w);
    e.z = p.z.value();
    e.w = p.w.value();
    return e;
  });
  VerificationReport r = summarise(start(c), evals, c.tolerance, exec);
  r.seed = s.seed;
  r.wall_time = elapsed_since(t0);
  return r;
}

template <class Fn>
VerificationReport run_grid(const InequalityCase& c, const PolarGrid& grid, const Execution& exec,
                            Fn&& point_eval) {
  validate_grid(grid);
  const auto t0 = std::chrono::steady_clock::now();
  auto evals = evaluate_all(grid.radial * grid.angular, exec.threads, [&](std::size_t i) {
    const DiskPoint z(grid_point(grid, i));
    Eval e = point_eval(z);
    e.z = z.value();
    return e;
  });
  VerificationReport r = summarise(start(c), evals, c.tolerance, exec);
  r.wall_time = elapsed_since(t0);
  return r;
}

}  // namespace

bool applicable(CheckKind kind, const HoloFunction& f, const Weight* weight) {
  switch (kind) {
    case CheckKind::re_contraction:
    case CheckKind::pointwise_gradient:
      return weight != nullptr && real_part_interval(f.codomain).within(weight->domain());
    case CheckKind::kv_factor:
      return real_part_interval(f.codomain).within(Interval(-1.0, 1.0));
    case CheckKind::modulus_contraction:
    case CheckKind::pavlovic:
    case CheckKind::schwarz_pick:
      return f.codomain == Codomain::disk;
    case CheckKind::abs_rho:
    case CheckKind::abs_sigma:
    case CheckKind::ball_beta:
      return false;
  }
  return false;
}

VerificationReport verify_re_contraction(const InequalityCase& c, const SampleSpec& s,
                                         const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  if (auto gated = gate_on_curvature(c)) {
    gated->seed = s.seed;
    return *gated;
  }
  const HoloFunction& f = *c.function;
  const Weight& omega = *c.weight;
  return run_pairs(c, s, exec, [&](DiskPoint z, DiskPoint w) {
    Eval e;
    e.lhs = omega_distance(omega, eval_re(f, z), eval_re(f, w));
    e.rhs = c.factor * hyperbolic_sigma(z, w);
    return e;
  });
}

VerificationReport verify_pointwise_gradient(const InequalityCase& c, const PolarGrid& grid,
                                             const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  if (auto gated = gate_on_curvature(c)) return *gated;
  const HoloFunction& f = *c.function;
  const Weight& omega = *c.weight;
  return run_grid(c, grid, exec, [&](DiskPoint z) {
    const double re = eval_re(f, z);
    if (!omega.domain().contains(re)) throw InvalidInput("Re f(z) outside the weight's interval");
    Eval e;
    e.lhs = omega(re) * std::abs(f.deriv(z.value())) * (1.0 - std::norm(z.value())) / 2.0;
    e.rhs = c.factor;
    return e;
  });
}

VerificationReport verify_modulus_contraction(const InequalityCase& c, const SampleSpec& s,
                                              const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  const HoloFunction& f = *c.function;
  return run_pairs(c, s, exec, [&](DiskPoint z, DiskPoint w) {
    Eval e;
    const DiskPoint fz(Complex{eval_abs(f, z), 0.0});
    const DiskPoint fw(Complex{eval_abs(f, w), 0.0});
    e.lhs = hyperbolic_sigma(fz, fw);
    e.rhs = c.factor * hyperbolic_sigma(z, w);
    return e;
  });
}

VerificationReport verify_pavlovic(const InequalityCase& c, const PolarGrid& grid,
                                   const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  const HoloFunction& f = *c.function;
  return run_grid(c, grid, exec, [&](DiskPoint z) {
    // Off the zero set |f| is differentiable with |grad |f|| = |f'|; on it,
    // |f'| still bounds the upper gradient, so one inequality covers both.
    const Complex fz = f.eval(z.value());
    Eval e;
    e.zero_branch = std::abs(fz) <= kZeroBranch;
    e.lhs = std::abs(f.deriv(z.value())) * (1.0 - std::norm(z.value()));
    e.rhs = 1.0 - std::norm(fz);
    return e;
  });
}

VerificationReport verify_kv_factor(const InequalityCase& c, const SampleSpec& s,
                                    const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  const HoloFunction& f = *c.function;
  const Weight hyperbolic_interval = omega_tilde_weight();
  return run_pairs(c, s, exec, [&](DiskPoint z, DiskPoint w) {
    Eval e;
    const double sigma = hyperbolic_sigma(z, w);
    e.lhs = omega_distance(hyperbolic_interval, eval_re(f, z), eval_re(f, w));
    e.rhs = c.factor * sigma;
    if (!(z == w)) e.ratio_den = sigma;
    return e;
  });
}

VerificationReport verify_schwarz_pick(const InequalityCase& c, const SampleSpec& s,
                                       const Execution& exec) {
  require_disk_source(c);
  require_applicable(c);
  const HoloFunction& f = *c.function;
  return run_pairs(c, s, exec, [&](DiskPoint z, DiskPoint w) {
    Eval e;
    e.lhs = hyperbolic_sigma(DiskPoint(f.eval(z.value())), DiskPoint(f.eval(w.value())));
    e.rhs = c.factor * hyperbolic_sigma(z, w);
    return e;
  });
}

std::vector<VerificationReport> verify_abs_inequalities(const SampleSpec& s,
                                                        const std::vector<std::size_t>& ball_dims,
                                                        const Execution& exec,
                                                        Tolerance tolerance) {
  std::vector<VerificationReport> out;
  InequalityCase rho_case;
  rho_case.id = "abs/rho";
  rho_case.kind = CheckKind::abs_rho;
  rho_case.tolerance = tolerance;
  out.push_back(run_pairs(rho_case, s, exec, [](DiskPoint z, DiskPoint w) {
    Eval e;
    e.lhs = pseudo_hyperbolic(z.radial(), w.radial());
    e.rhs = pseudo_hyperbolic(z, w);
    return e;
  }));

  InequalityCase sigma_case = rho_case;
  sigma_case.id = "abs/sigma";
  sigma_case.kind = CheckKind::abs_sigma;
  out.push_back(run_pairs(sigma_case, s, exec, [](DiskPoint z, DiskPoint w) {
    Eval e;
    e.lhs = hyperbolic_sigma(z.radial(), w.radial());
    e.rhs = hyperbolic_sigma(z, w);
    return e;
  }));

  for (std::size_t n : ball_dims) {
    s.validate();
    if (n < 1) throw InvalidInput("ball dimension must be at least 1");
    InequalityCase beta_case = rho_case;
    beta_case.id = "abs/ball_beta/n" + std::to_string(n);
    beta_case.kind = CheckKind::ball_beta;
    beta_case.ball_dim = n;
    const auto t0 = std::chrono::steady_clock::now();
    auto evals = evaluate_all(s.count, exec.threads, [&](std::size_t i) {
      const BallPair p = sample_ball_pair(s, n, i);
      Eval e;
      e.z = p.z.coords()[0];
      e.w = p.w.coords()[0];
      e.lhs = bergman_beta(p.z.radial(), p.w.radial());
      e.rhs = bergman_beta(p.z, p.w);
      return e;
    });
    VerificationReport r = summarise(start(beta_case), evals, tolerance, exec);
    r.seed = s.seed;
    r.wall_time = elapsed_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

VerificationReport verify(const InequalityCase& c, const SampleSpec& s, const PolarGrid& grid,
                          const Execution& exec) {
  switch (c.kind) {
    case CheckKind::re_contraction: return verify_re_contraction(c, s, exec);
    case CheckKind::pointwise_gradient: return verify_pointwise_gradient(c, grid, exec);
    case CheckKind::modulus_contraction: return verify_modulus_contraction(c, s, exec);
    case CheckKind::pavlovic: return verify_pavlovic(c, grid, exec);
    case CheckKind::kv_factor: return verify_kv_factor(c, s, exec);
    case CheckKind::schwarz_pick: return verify_schwarz_pick(c, s, exec);
    case CheckKind::abs_rho:
    case CheckKind::abs_sigma:
    case CheckKind::ball_beta: break;
  }
  throw InvalidInput("use verify_abs_inequalities for the |z|, |w| checks");
}

namespace {

InequalityCase base_case(const HoloFunction& f, CheckKind kind, std::string suffix = {}) {
  InequalityCase c;
  c.id = std::string(to_string(kind)) + "/" + f.id + suffix;
  c.kind = kind;
  c.function = f;
  return c;
}

}  // namespace

InequalityCase make_re_case(const HoloFunction& f, Weight weight) {
  InequalityCase c = base_case(f, CheckKind::re_contraction, "/" + weight.name());
  c.weight = std::move(weight);
  return c;
}

InequalityCase make_gradient_case(const HoloFunction& f, Weight weight) {
  InequalityCase c = base_case(f, CheckKind::pointwise_gradient, "/" + weight.name());
  c.weight = std::move(weight);
  return c;
}

InequalityCase make_modulus_case(const HoloFunction& f) {
  return base_case(f, CheckKind::modulus_contraction);
}

InequalityCase make_pavlovic_case(const HoloFunction& f) {
  return base_case(f, CheckKind::pavlovic);
}

InequalityCase make_kv_case(const HoloFunction& f) {
  InequalityCase c = base_case(f, CheckKind::kv_factor);
  c.factor = 4.0 / std::numbers::pi;
  return c;
}

InequalityCase make_schwarz_pick_case(const HoloFunction& f) {
  return base_case(f, CheckKind::schwarz_pick);
}

}  // namespace hypcon
