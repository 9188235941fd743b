#pragma once

// The unit ball B^n of C^n: Moebius automorphisms, the pseudo-hyperbolic
// distance and the Bergman metric and distance.

#include <cstddef>
#include <vector>

#include "hypcon/disk.hpp"

namespace hypcon {

using ComplexVector = std::vector<Complex>;

/// <u, v> = sum u_i conj(v_i); conjugate-linear in the second slot.
Complex inner(const ComplexVector& u, const ComplexVector& v);
double norm(const ComplexVector& u);

class BallPoint {
 public:
  /// Throws InvalidInput for an empty or non-finite vector, or ||z|| >= 1 - guard.
  explicit BallPoint(ComplexVector coords);

  static bool admissible(const ComplexVector& coords) noexcept;
  static BallPoint origin(std::size_t n) { return BallPoint(ComplexVector(n)); }

  const ComplexVector& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double norm() const { return hypcon::norm(coords_); }

  /// (||z||, 0, ..., 0).
  BallPoint radial() const;

  friend bool operator==(const BallPoint&, const BallPoint&) = default;

 private:
  ComplexVector coords_;
};

/// phi_a(w) = (a - P_a w - sqrt(1 - |a|^2) Q_a w) / (1 - <w, a>), with
/// P_a w = (<w, a> / |a|^2) a and Q_a = I - P_a; phi_0(w) = -w.
BallPoint ball_mobius(const BallPoint& a, const BallPoint& w);

double ball_rho(const BallPoint& z, const BallPoint& w);

/// (1 - |z|^2)(1 - |w|^2) / |1 - <z, w>|^2 = 1 - rho(z, w)^2.
double ball_one_minus_rho_sq(const BallPoint& z, const BallPoint& w);

/// beta(z, w) = log((1 + rho) / (1 - rho)).
double bergman_beta(const BallPoint& z, const BallPoint& w);

struct BergmanFormValue {
  Complex value;
  BallPoint at;
};

/// H_z(u, v) = 2 [(1 - |z|^2) <u, v> + <u, z> <z, v>] / (1 - |z|^2)^2.
BergmanFormValue bergman_form(const BallPoint& z, const ComplexVector& u, const ComplexVector& v);

}  // namespace hypcon
