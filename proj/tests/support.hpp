#pragma once

// Small helpers shared by the unit tests: a seeded generator for
// property checks and relative comparisons.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "hypcon/ball.hpp"
#include "hypcon/disk.hpp"

namespace hypcon::test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// Uniform in the disk of radius `cap`.
  DiskPoint disk(double cap = 0.99) {
    const double r = cap * std::sqrt(uniform(0.0, 1.0));
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return DiskPoint(std::polar(r, t));
  }

  /// Radius pushed toward the unit circle: 1 - 10^(-u), u up to `digits`.
  DiskPoint disk_near_boundary(double digits = 6.0) {
    const double r = 1.0 - std::pow(10.0, -uniform(0.0, digits));
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return DiskPoint(std::polar(std::min(r, 1.0 - 2e-9), t));
  }

  BallPoint ball(std::size_t n, double cap = 0.99) {
    ComplexVector v(n);
    double s = 0.0;
    std::normal_distribution<double> g;
    for (auto& c : v) {
      c = {g(rng_), g(rng_)};
      s += std::norm(c);
    }
    const double r = cap * std::pow(uniform(0.0, 1.0), 1.0 / (2.0 * n)) / std::sqrt(s);
    for (auto& c : v) c *= r;
    return BallPoint(std::move(v));
  }

  ComplexVector vector(std::size_t n) {
    ComplexVector v(n);
    for (auto& c : v) c = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// |got - want| relative to a scale of the problem, e.g. omega(t) for its derivatives.
inline double rel_err_scaled(double got, double want, double scale) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(scale), 1e-300});
}

}  // namespace hypcon::test
