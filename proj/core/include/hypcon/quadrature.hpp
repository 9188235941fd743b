#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hypcon::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b] (finite endpoints).
/// Throws ConvergenceError when the estimate exceeds max(abs_tol, rel_tol |I|).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

/// Gauss-Legendre rule on [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0, 1]. Rules are cached per n.
const Rule& gauss_legendre(int n);

}  // namespace hypcon::quadrature
