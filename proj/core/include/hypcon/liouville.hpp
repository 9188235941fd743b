#pragma once

// The Liouville equation lambda'' = exp(lambda). With lambda = log(2 k^2 omega^2)
// its solutions are exactly the weights with k_omega = -k^2.

#include <cstddef>
#include <vector>

#include "hypcon/weights.hpp"

namespace hypcon {

struct LiouvilleState {
  double t = 0.0;
  double lambda = 0.0;
  double dlambda = 0.0;
};

/// dlambda^2 / 2 - exp(lambda); conserved along exact solutions.
double first_integral(const LiouvilleState& state);

struct StepControl {
  double tol = 0.0;
  double lambda_cap = 50.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool blow_up = false;
};

/// Samples at accepted steps, strictly increasing in t, with cubic Hermite
/// dense output for lambda and dlambda.
class Trajectory {
 public:
  Trajectory(std::vector<LiouvilleState> samples, StepControl control);

  const std::vector<LiouvilleState>& samples() const noexcept { return samples_; }
  const StepControl& control() const noexcept { return control_; }
  double t_begin() const noexcept { return samples_.front().t; }
  double t_end() const noexcept { return samples_.back().t; }
  bool blow_up() const noexcept { return control_.blow_up; }

  /// Dense output; throws InvalidInput outside [t_begin, t_end].
  LiouvilleState at(double t) const;
  /// Derivative of the dlambda interpolant, i.e. the interpolated lambda''.
  double d2lambda_at(double t) const;

 private:
  std::size_t segment(double t) const;

  std::vector<LiouvilleState> samples_;
  StepControl control_;
};

struct SolveOptions {
  double lambda_cap = 50.0;
  std::size_t max_steps = 1'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration from `initial` to t_end (either
/// direction). If lambda exceeds the cap the partial trajectory is returned with
/// control().blow_up set.
Trajectory solve_liouville(const LiouvilleState& initial, double t_end, double tol,
                           const SolveOptions& options = {});

/// omega = exp(lambda / 2) / (k sqrt 2), with derivatives from the dense output.
/// Requires k >= 1 and at least four accepted steps.
Weight lambda_to_weight(const Trajectory& trajectory, double k);

/// lambda = log(2 k^2 omega^2) for a family member; independent of k:
///   exp(lambda) sin^2(C1 t + C2) = 2 C1^2, exp(lambda) sinh^2(C1 t + C2) = 2 C1^2,
///   exp(lambda) (t + C)^2 = 2.
double closed_form_lambda(const WeightFamily& family, double t);
double closed_form_dlambda(const WeightFamily& family, double t);
LiouvilleState closed_form_state(const WeightFamily& family, double t);

/// Exact states at n uniformly spaced points of [t0, t1], as a Trajectory.
Trajectory closed_form_trajectory(const WeightFamily& family, double t0, double t1, std::size_t n);

}  // namespace hypcon
