#pragma once

// Conformal metrics h(z)|dz| on planar domains: the Poincare disk
// (h = 2 / (1 - |z|^2)), the right half-plane (h = 1 / Re z) and vertical
// strips J x R with h = omega(Re z).

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypcon/disk.hpp"
#include "hypcon/weights.hpp"

namespace hypcon {

enum class DomainKind { poincare_disk, half_plane, strip };

const char* to_string(DomainKind kind) noexcept;

class PlanarDomain {
 public:
  static PlanarDomain poincare_disk();
  static PlanarDomain half_plane();
  static PlanarDomain strip(Weight weight);

  DomainKind kind() const noexcept;
  const std::string& description() const noexcept { return description_; }
  /// The strip's weight; nullptr for the other kinds.
  const Weight* weight() const noexcept;

  bool contains(Complex z) const noexcept;

 private:
  struct Disk {};
  struct HalfPlane {};
  struct Strip {
    Weight weight;
  };

  PlanarDomain(std::variant<Disk, HalfPlane, Strip> kind, std::string description)
      : kind_(std::move(kind)), description_(std::move(description)) {}

  std::variant<Disk, HalfPlane, Strip> kind_;
  std::string description_;
};

/// h(z). Throws InvalidInput outside the domain.
double density(const PlanarDomain& domain, Complex z);
/// (dh/dx, dh/dy) packed as a complex number.
Complex density_gradient(const PlanarDomain& domain, Complex z);

/// -Laplacian(log h) / h^2 in closed form; for strips this is k_omega(Re z).
double gauss_curvature(const PlanarDomain& domain, Complex z);
/// Same quantity through a five-point Laplacian of log h.
double gauss_curvature_numeric(const PlanarDomain& domain, Complex z);

class PathPolyline {
 public:
  /// Requires at least two nodes, all finite, consecutive nodes distinct.
  explicit PathPolyline(std::vector<Complex> nodes);

  const std::vector<Complex>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  static PathPolyline straight(Complex from, Complex to, std::size_t segments = 1);

 private:
  std::vector<Complex> nodes_;
};

/// Sum over segments of integral h(gamma)|gamma'|, each by Gauss-Legendre with
/// the order doubled from 8 until successive values agree to 1e-12.
/// Throws InvalidInput when a node or a segment sample leaves the domain.
double path_length(const PlanarDomain& domain, const PathPolyline& path);

enum class DistanceMethod { closed_form, variational };

const char* to_string(DistanceMethod method) noexcept;

struct OptimizerStats {
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  bool converged = true;
};

struct DistanceCertificate {
  PathPolyline path;
  OptimizerStats stats;
};

struct DistanceResult {
  double value = 0.0;
  DistanceMethod method = DistanceMethod::closed_form;
  std::optional<DistanceCertificate> certificate;

  bool converged() const noexcept { return !certificate || certificate->stats.converged; }
  std::size_t iterations() const noexcept { return certificate ? certificate->stats.iterations : 0; }
};

struct VariationalOptions {
  std::size_t interior_nodes = 65;
  std::size_t max_iterations = 500;
  double gradient_tol = 1e-8;
};

struct DistanceOptions {
  bool force_variational = false;
  VariationalOptions variational{};
};

/// Closed form for the disk and half-plane, variational minimisation over
/// polylines with fixed endpoints for strips (or whenever forced). A variational
/// result that stopped before the gradient test passed is returned with
/// converged() == false and the best value found.
DistanceResult distance(const PlanarDomain& domain, Complex z, Complex w,
                        const DistanceOptions& options = {});

/// Hyperbolic distance of the right half-plane, 2 atanh(|z - w| / |z + conj(w)|).
double half_plane_distance(Complex z, Complex w);

/// (1 - z) / (1 + z): the disk onto the right half-plane, an isometry of the two
/// curvature -1 metrics.
Complex cayley(Complex z);

/// Reparameterises the polyline by metric arc length and returns the largest
/// deviation of h(gamma)^2 |gamma'|^2 from 1 at segment midpoints.
double unit_tangent_norm_check(const PlanarDomain& domain, const PathPolyline& path);

}  // namespace hypcon
