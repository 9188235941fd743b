#pragma once

// Holomorphic test maps on the unit disk with analytic derivatives and a
// declared codomain. These play the role of f in every checked inequality.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypcon/disk.hpp"
#include "hypcon/weights.hpp"

namespace hypcon {

enum class Codomain { disk, strip, right_half_plane };

const char* to_string(Codomain codomain) noexcept;
Codomain codomain_from_string(const std::string& name);

/// Range of Re f for a map into the codomain: (-1, 1) for the disk and the
/// strip (-1, 1) x R, (0, inf) for the half-plane.
Interval real_part_interval(Codomain codomain);
bool codomain_contains(Codomain codomain, Complex value) noexcept;

struct HoloFunction {
  std::string id;
  std::function<Complex(Complex)> eval;
  std::function<Complex(Complex)> deriv;
  Codomain codomain = Codomain::disk;
  std::vector<std::pair<std::string, double>> params;
  /// Disk automorphisms are equality cases of the Schwarz-Pick type bounds.
  bool automorphism = false;
};

/// identity, Blaschke factor and product, powers, Cayley map and its square
/// root, the strip map and a scaled copy, a constant and a scaled exponential.
std::vector<HoloFunction> catalog();

/// nullptr when no entry has that id.
const HoloFunction* find_function(const std::vector<HoloFunction>& functions, const std::string& id);

double eval_re(const HoloFunction& f, DiskPoint z);
/// |f(z)|; throws InvalidInput unless the declared codomain is the disk.
double eval_abs(const HoloFunction& f, DiskPoint z);

/// p(z) / q(z) with complex coefficients in increasing degree.
HoloFunction rational_function(std::string id, std::vector<Complex> numerator,
                               std::vector<Complex> denominator, Codomain codomain);

/// f o phi_a for a disk-valued f.
HoloFunction compose_with_mobius(const HoloFunction& f, DiskPoint a);

struct CodomainCheck {
  bool ok = true;
  std::size_t samples = 0;
  std::optional<Complex> offending_point;
  std::optional<Complex> offending_value;
};

/// Evaluates f on a polar grid of about `samples` points with radius up to
/// radius_cap and checks every image against the declared codomain.
CodomainCheck validate_codomain(const HoloFunction& f, std::size_t samples = 10'000,
                                double radius_cap = 0.999);

/// Largest gap between deriv and a central complex difference quotient over a
/// polar grid inside radius_cap, relative to max(1, |f'|).
double derivative_consistency(const HoloFunction& f, std::size_t samples = 2'500,
                              double radius_cap = 0.99);

}  // namespace hypcon
