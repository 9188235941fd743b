#include "hypcon/disk.hpp"

#include <cmath>
#include <string>

#include "hypcon/errors.hpp"

namespace hypcon {

Complex require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput(std::string(what) + " has a non-finite component");
  }
  return z;
}

bool DiskPoint::admissible(Complex value) noexcept {
  return std::isfinite(value.real()) && std::isfinite(value.imag()) &&
         std::abs(value) < 1.0 - kBoundaryGuard;
}

DiskPoint::DiskPoint(Complex value) : value_(require_finite(value, "disk point")) {
  if (!(std::abs(value_) < 1.0 - kBoundaryGuard)) {
    throw InvalidInput("disk point outside the unit disk (|z| >= 1 - guard)");
  }
}

DiskPoint mobius_disk(DiskPoint a, DiskPoint z) {
  const Complex av = a.value();
  const Complex zv = z.value();
  const Complex image = (av - zv) / (1.0 - std::conj(av) * zv);
  // |phi_a(z)| < 1 analytically; rounding can only push it to the guard band
  // for inputs already within a few ulp of it.
  if (!DiskPoint::admissible(image)) {
    throw InvalidInput("mobius_disk image fell into the boundary guard band");
  }
  return DiskPoint(image);
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
  if (z == w) return 0.0;
  const Complex zv = z.value();
  const Complex wv = w.value();
  return std::abs(zv - wv) / std::abs(1.0 - std::conj(zv) * wv);
}

double one_minus_phi_product(DiskPoint z, DiskPoint w) {
  const double z2 = std::norm(z.value());
  const double w2 = std::norm(w.value());
  const double denom = std::norm(1.0 - std::conj(z.value()) * w.value());
  return (1.0 - z2) * (1.0 - w2) / denom;
}

double sigma_from_rho(double rho, double one_minus_rho_sq) noexcept {
  if (rho <= 0.0) return 0.0;
  if (rho < 0.5) return 2.0 * std::atanh(rho);
  // (1 + rho) / (1 - rho) = (1 + rho)^2 / (1 - rho^2)
  return 2.0 * std::log1p(rho) - std::log(one_minus_rho_sq);
}

double hyperbolic_sigma(DiskPoint z, DiskPoint w) {
  return sigma_from_rho(pseudo_hyperbolic(z, w), one_minus_phi_product(z, w));
}

}  // namespace hypcon
