#include "hypcon/ball.hpp"

#include <cmath>

#include "hypcon/errors.hpp"

namespace hypcon {

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw InvalidInput("inner product of vectors of different length");
  Complex sum{};
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * std::conj(v[i]);
  return sum;
}

double norm(const ComplexVector& u) {
  double sum = 0.0;
  for (Complex c : u) sum += std::norm(c);
  return std::sqrt(sum);
}

namespace {

double norm_sq(const ComplexVector& u) {
  double sum = 0.0;
  for (Complex c : u) sum += std::norm(c);
  return sum;
}

}  // namespace

bool BallPoint::admissible(const ComplexVector& coords) noexcept {
  if (coords.empty()) return false;
  for (Complex c : coords) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return hypcon::norm(coords) < 1.0 - kBoundaryGuard;
}

BallPoint::BallPoint(ComplexVector coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("ball point requires n >= 1");
  for (Complex c : coords_) require_finite(c, "ball point");
  if (!(hypcon::norm(coords_) < 1.0 - kBoundaryGuard)) {
    throw InvalidInput("ball point outside the unit ball (||z|| >= 1 - guard)");
  }
}

BallPoint BallPoint::radial() const {
  ComplexVector r(coords_.size());
  r[0] = norm();
  return BallPoint(std::move(r));
}

BallPoint ball_mobius(const BallPoint& a, const BallPoint& w) {
  if (a.dim() != w.dim()) throw InvalidInput("ball_mobius: dimension mismatch");
  const ComplexVector& av = a.coords();
  const ComplexVector& wv = w.coords();
  const std::size_t n = av.size();
  const double a2 = norm_sq(av);
  ComplexVector out(n);
  if (a2 == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = -wv[i];
    return BallPoint(std::move(out));
  }
  const Complex wa = inner(wv, av);
  const Complex coef = wa / a2;
  const double sa = std::sqrt(1.0 - a2);
  const Complex denom = 1.0 - wa;
  // a - P_a w - s Q_a w = (a - w) + (1 - s) Q_a w. Q_a vanishes for n = 1,
  // where forming it would only add the rounding of P_a.
  for (std::size_t i = 0; i < n; ++i) {
    Complex num = av[i] - wv[i];
    if (n > 1) num += (1.0 - sa) * (wv[i] - coef * av[i]);
    out[i] = num / denom;
  }
  if (!BallPoint::admissible(out)) {
    throw InvalidInput("ball_mobius image fell into the boundary guard band");
  }
  return BallPoint(std::move(out));
}

double ball_rho(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw InvalidInput("ball_rho: dimension mismatch");
  if (z == w) return 0.0;
  return ball_mobius(z, w).norm();
}

double ball_one_minus_rho_sq(const BallPoint& z, const BallPoint& w) {
  const double z2 = norm_sq(z.coords());
  const double w2 = norm_sq(w.coords());
  return (1.0 - z2) * (1.0 - w2) / std::norm(1.0 - inner(z.coords(), w.coords()));
}

double bergman_beta(const BallPoint& z, const BallPoint& w) {
  return sigma_from_rho(ball_rho(z, w), ball_one_minus_rho_sq(z, w));
}

BergmanFormValue bergman_form(const BallPoint& z, const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != z.dim() || v.size() != z.dim()) {
    throw InvalidInput("bergman_form: dimension mismatch");
  }
  const double q = 1.0 - norm_sq(z.coords());
  const Complex value =
      2.0 * (q * inner(u, v) + inner(u, z.coords()) * inner(z.coords(), v)) / (q * q);
  return {value, z};
}

}  // namespace hypcon
