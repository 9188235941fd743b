#include "hypcon/liouville.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <memory>
#include <numbers>

#include "hypcon/errors.hpp"

namespace hypcon {

namespace {

using State = std::array<double, 2>;

struct LiouvilleRhs {
  void operator()(const State& y, State& dydt, double /*t*/) const {
    dydt[0] = y[1];
    dydt[1] = std::exp(y[0]);
  }
};

struct Hermite {
  double h, s;
  // basis functions and their derivatives with respect to t
  double h00() const { return (1 + 2 * s) * (1 - s) * (1 - s); }
  double h10() const { return s * (1 - s) * (1 - s); }
  double h01() const { return s * s * (3 - 2 * s); }
  double h11() const { return s * s * (s - 1); }
  double d00() const { return 6 * s * (s - 1) / h; }
  double d10() const { return (1 - s) * (1 - 3 * s) / h; }
  double d01() const { return 6 * s * (1 - s) / h; }
  double d11() const { return s * (3 * s - 2) / h; }
};

}  // namespace

double first_integral(const LiouvilleState& state) {
  return 0.5 * state.dlambda * state.dlambda - std::exp(state.lambda);
}

Trajectory::Trajectory(std::vector<LiouvilleState> samples, StepControl control)
    : samples_(std::move(samples)), control_(control) {
  if (samples_.empty()) throw InvalidInput("trajectory requires at least one sample");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t)) {
      throw InvalidInput("trajectory samples must be strictly increasing in t");
    }
  }
}

std::size_t Trajectory::segment(double t) const {
  if (!(t >= t_begin() && t <= t_end())) {
    throw InvalidInput("dense output requested outside the trajectory");
  }
  if (samples_.size() < 2) throw InvalidInput("dense output requires two samples");
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double value, const LiouvilleState& s) { return value < s.t; });
  std::size_t i = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  if (i == 0) i = 1;
  if (i >= samples_.size()) i = samples_.size() - 1;
  return i - 1;
}

LiouvilleState Trajectory::at(double t) const {
  const std::size_t i = segment(t);
  const LiouvilleState& a = samples_[i];
  const LiouvilleState& b = samples_[i + 1];
  const Hermite H{b.t - a.t, (t - a.t) / (b.t - a.t)};
  const double ea = std::exp(a.lambda);
  const double eb = std::exp(b.lambda);
  LiouvilleState out;
  out.t = t;
  out.lambda = H.h00() * a.lambda + H.h10() * H.h * a.dlambda + H.h01() * b.lambda +
               H.h11() * H.h * b.dlambda;
  out.dlambda =
      H.h00() * a.dlambda + H.h10() * H.h * ea + H.h01() * b.dlambda + H.h11() * H.h * eb;
  return out;
}

double Trajectory::d2lambda_at(double t) const {
  const std::size_t i = segment(t);
  const LiouvilleState& a = samples_[i];
  const LiouvilleState& b = samples_[i + 1];
  const Hermite H{b.t - a.t, (t - a.t) / (b.t - a.t)};
  return H.d00() * a.dlambda + H.d10() * H.h * std::exp(a.lambda) + H.d01() * b.dlambda +
         H.d11() * H.h * std::exp(b.lambda);
}

Trajectory solve_liouville(const LiouvilleState& initial, double t_end, double tol,
                           const SolveOptions& options) {
  namespace odeint = boost::numeric::odeint;
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("solve_liouville requires tol > 0");
  if (!std::isfinite(initial.t) || !std::isfinite(initial.lambda) ||
      !std::isfinite(initial.dlambda) || !std::isfinite(t_end)) {
    throw InvalidInput("solve_liouville requires finite initial data and end point");
  }
  if (t_end == initial.t) throw InvalidInput("solve_liouville requires t_end != t0");

  StepControl control;
  control.tol = tol;
  control.lambda_cap = options.lambda_cap;

  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  const double direction = t_end > initial.t ? 1.0 : -1.0;
  const double span = std::abs(t_end - initial.t);

  State y{initial.lambda, initial.dlambda};
  double t = initial.t;
  double dt = direction * std::min(span, 1e-3);
  std::vector<LiouvilleState> samples{initial};

  while (direction * (t_end - t) > 0.0) {
    if (control.accepted + control.rejected >= options.max_steps) {
      throw ConvergenceError("solve_liouville exceeded the step budget", std::abs(dt));
    }
    const double remaining = t_end - t;
    const bool last = std::abs(dt) >= std::abs(remaining);
    if (last) dt = remaining;
    const double t_before = t;
    if (stepper.try_step(LiouvilleRhs{}, y, t, dt) == odeint::fail) {
      ++control.rejected;
      if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
        // the solution is running into a singularity faster than we can follow
        control.blow_up = true;
        break;
      }
      continue;
    }
    ++control.accepted;
    if (last) t = t_end;
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || y[0] > options.lambda_cap) {
      control.blow_up = true;
      if (std::isfinite(y[0]) && std::isfinite(y[1])) samples.push_back({t, y[0], y[1]});
      break;
    }
    if (t != t_before) samples.push_back({t, y[0], y[1]});
  }

  if (direction < 0.0) std::reverse(samples.begin(), samples.end());
  return Trajectory(std::move(samples), control);
}

Weight lambda_to_weight(const Trajectory& trajectory, double k) {
  if (!(k >= 1.0) || !std::isfinite(k)) throw InvalidInput("lambda_to_weight requires k >= 1");
  if (trajectory.samples().size() < 5) {
    throw InvalidInput("trajectory too short (fewer than 4 accepted steps)");
  }
  const double scale = 1.0 / (k * std::numbers::sqrt2);
  // Shared ownership keeps the weight valid after the trajectory goes away.
  auto traj = std::make_shared<const Trajectory>(trajectory);
  auto omega = [traj, scale](double t) { return scale * std::exp(0.5 * traj->at(t).lambda); };
  auto d1 = [traj, scale](double t) {
    const LiouvilleState s = traj->at(t);
    return scale * std::exp(0.5 * s.lambda) * 0.5 * s.dlambda;
  };
  auto d2 = [traj, scale](double t) {
    const LiouvilleState s = traj->at(t);
    const double mu2 = traj->d2lambda_at(t);
    return scale * std::exp(0.5 * s.lambda) * (0.25 * s.dlambda * s.dlambda + 0.5 * mu2);
  };
  return Weight(Interval(trajectory.t_begin(), trajectory.t_end()), omega, d1, d2, std::nullopt,
                "liouville");
}

namespace {

double family_argument(const WeightFamily& f, double t) {
  if (!std::isfinite(t) || !f.domain.contains(t)) {
    throw InvalidInput("closed-form lambda evaluated outside the family's interval");
  }
  return f.kind == FamilyKind::linear ? t + f.c : f.c1 * t + f.c2;
}

}  // namespace

double closed_form_lambda(const WeightFamily& f, double t) {
  const double u = family_argument(f, t);
  double denom = 0.0;
  double numer = 2.0;
  switch (f.kind) {
    case FamilyKind::sin:
      denom = std::sin(u);
      numer = 2.0 * f.c1 * f.c1;
      break;
    case FamilyKind::sinh:
      denom = std::sinh(u);
      numer = 2.0 * f.c1 * f.c1;
      break;
    case FamilyKind::linear:
      denom = u;
      break;
  }
  if (denom == 0.0) throw DomainError("closed-form lambda evaluated at a singularity");
  return std::log(numer) - 2.0 * std::log(std::abs(denom));
}

double closed_form_dlambda(const WeightFamily& f, double t) {
  const double u = family_argument(f, t);
  switch (f.kind) {
    case FamilyKind::sin: return -2.0 * f.c1 * std::cos(u) / std::sin(u);
    case FamilyKind::sinh: return -2.0 * f.c1 * std::cosh(u) / std::sinh(u);
    case FamilyKind::linear: return -2.0 / u;
  }
  return 0.0;
}

LiouvilleState closed_form_state(const WeightFamily& family, double t) {
  return {t, closed_form_lambda(family, t), closed_form_dlambda(family, t)};
}

Trajectory closed_form_trajectory(const WeightFamily& family, double t0, double t1,
                                  std::size_t n) {
  if (n < 2 || !(t1 > t0)) throw InvalidInput("closed_form_trajectory requires n >= 2 and t1 > t0");
  std::vector<LiouvilleState> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    samples.push_back(closed_form_state(family, t));
  }
  StepControl control;
  control.accepted = n - 1;
  return Trajectory(std::move(samples), control);
}

}  // namespace hypcon
