#pragma once

// Unit-disk Möbius geometry: automorphisms, pseudo-hyperbolic distance and
// the curvature -1 hyperbolic distance.

#include <complex>

namespace hypcon {

using Complex = std::complex<double>;

/// Points with |z| >= 1 - kBoundaryGuard are rejected; beyond that 1 - |z|^2
/// loses most of its significant digits.
inline constexpr double kBoundaryGuard = 1e-9;

/// Throws InvalidInput unless both components are finite.
Complex require_finite(Complex z, const char* what = "complex value");

/// An immutable point of the open unit disk.
class DiskPoint {
 public:
  /// Throws InvalidInput when `value` is non-finite or outside the guarded disk.
  explicit DiskPoint(Complex value);
  DiskPoint(double re, double im) : DiskPoint(Complex{re, im}) {}

  static bool admissible(Complex value) noexcept;

  Complex value() const noexcept { return value_; }
  double abs() const noexcept { return std::abs(value_); }

  /// The non-negative real point with the same modulus.
  DiskPoint radial() const { return DiskPoint(Complex{abs(), 0.0}); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Complex value_;
};

/// phi_a(z) = (a - z) / (1 - conj(a) z). An involution exchanging a and 0.
DiskPoint mobius_disk(DiskPoint a, DiskPoint z);

/// rho(z, w) = |phi_z(w)|.
double pseudo_hyperbolic(DiskPoint z, DiskPoint w);

/// (1 - |z|^2)(1 - |w|^2) / |1 - conj(z) w|^2, which equals 1 - rho(z, w)^2.
double one_minus_phi_product(DiskPoint z, DiskPoint w);

/// sigma(z, w) = log((1 + rho) / (1 - rho)) = 2 atanh(rho).
double hyperbolic_sigma(DiskPoint z, DiskPoint w);

/// log((1 + rho) / (1 - rho)) given rho and an accurately computed 1 - rho^2.
/// Shared by the disk and the ball so both use the same evaluation near rho -> 1.
double sigma_from_rho(double rho, double one_minus_rho_sq) noexcept;

}  // namespace hypcon
