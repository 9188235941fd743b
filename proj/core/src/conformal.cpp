#include "hypcon/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "hypcon/errors.hpp"
#include "hypcon/quadrature.hpp"

namespace hypcon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* to_string(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::poincare_disk: return "disk";
    case DomainKind::half_plane: return "halfplane";
    case DomainKind::strip: return "strip";
  }
  return "?";
}

const char* to_string(DistanceMethod method) noexcept {
  return method == DistanceMethod::closed_form ? "closed_form" : "variational";
}

PlanarDomain PlanarDomain::poincare_disk() {
  return PlanarDomain(Disk{}, "unit disk, h = 2/(1-|z|^2)");
}

PlanarDomain PlanarDomain::half_plane() {
  return PlanarDomain(HalfPlane{}, "right half-plane, h = 1/Re z");
}

PlanarDomain PlanarDomain::strip(Weight weight) {
  const auto text = [](double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  };
  std::string description = "strip over (" + text(weight.domain().lo()) + ", " +
                            text(weight.domain().hi()) + "), h = " + weight.name() +
                            "(Re z)";
  return PlanarDomain(Strip{std::move(weight)}, std::move(description));
}

DomainKind PlanarDomain::kind() const noexcept {
  return std::visit(Overloaded{[](const Disk&) { return DomainKind::poincare_disk; },
                               [](const HalfPlane&) { return DomainKind::half_plane; },
                               [](const Strip&) { return DomainKind::strip; }},
                    kind_);
}

const Weight* PlanarDomain::weight() const noexcept {
  if (const auto* s = std::get_if<Strip>(&kind_)) return &s->weight;
  return nullptr;
}

bool PlanarDomain::contains(Complex z) const noexcept {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return std::visit(
      Overloaded{[&](const Disk&) { return DiskPoint::admissible(z); },
                 [&](const HalfPlane&) { return z.real() > 0.0; },
                 [&](const Strip& s) { return s.weight.domain().contains(z.real()); }},
      kind_);
}

namespace {

void require_inside(const PlanarDomain& domain, Complex z) {
  if (!domain.contains(z)) {
    throw InvalidInput(std::string("point outside the ") + to_string(domain.kind()) + " domain");
  }
}

double log_density(const PlanarDomain& domain, Complex z) {
  switch (domain.kind()) {
    case DomainKind::poincare_disk: return std::log(2.0) - std::log1p(-std::norm(z));
    case DomainKind::half_plane: return -std::log(z.real());
    case DomainKind::strip: return std::log((*domain.weight())(z.real()));
  }
  return 0.0;
}

}  // namespace

double density(const PlanarDomain& domain, Complex z) {
  require_inside(domain, z);
  switch (domain.kind()) {
    case DomainKind::poincare_disk: return 2.0 / (1.0 - std::norm(z));
    case DomainKind::half_plane: return 1.0 / z.real();
    case DomainKind::strip: return (*domain.weight())(z.real());
  }
  return 0.0;
}

Complex density_gradient(const PlanarDomain& domain, Complex z) {
  require_inside(domain, z);
  switch (domain.kind()) {
    case DomainKind::poincare_disk: {
      const double q = 1.0 - std::norm(z);
      return 4.0 * z / (q * q);
    }
    case DomainKind::half_plane: return {-1.0 / (z.real() * z.real()), 0.0};
    case DomainKind::strip: return {domain.weight()->d1(z.real()), 0.0};
  }
  return {};
}

double gauss_curvature(const PlanarDomain& domain, Complex z) {
  require_inside(domain, z);
  switch (domain.kind()) {
    case DomainKind::poincare_disk:
    case DomainKind::half_plane: return -1.0;
    case DomainKind::strip: return curvature_k(*domain.weight(), z.real());
  }
  return 0.0;
}

double gauss_curvature_numeric(const PlanarDomain& domain, Complex z) {
  require_inside(domain, z);
  const double h = std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon())) *
                   std::max(1.0, std::abs(z));
  const Complex dx{h, 0.0};
  const Complex dy{0.0, h};
  for (Complex p : {z + dx, z - dx, z + dy, z - dy}) {
    if (!domain.contains(p)) throw DomainError("Laplacian stencil leaves the domain");
  }
  const double center = log_density(domain, z);
  const double laplacian = (log_density(domain, z + dx) + log_density(domain, z - dx) +
                            log_density(domain, z + dy) + log_density(domain, z - dy) -
                            4.0 * center) /
                           (h * h);
  const double rho = density(domain, z);
  return -laplacian / (rho * rho);
}

PathPolyline::PathPolyline(std::vector<Complex> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidInput("polyline requires at least two nodes");
  for (Complex z : nodes_) require_finite(z, "polyline node");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i] == nodes_[i - 1]) throw InvalidInput("polyline has repeated consecutive nodes");
  }
}

PathPolyline PathPolyline::straight(Complex from, Complex to, std::size_t segments) {
  if (segments == 0) throw InvalidInput("straight polyline requires at least one segment");
  std::vector<Complex> nodes(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(segments);
    nodes[i] = i == segments ? to : from + s * (to - from);
  }
  return PathPolyline(std::move(nodes));
}

namespace {

constexpr int kSegmentSamples = 16;

void require_segment_inside(const PlanarDomain& domain, Complex p, Complex q) {
  for (int j = 0; j < kSegmentSamples; ++j) {
    const double s = static_cast<double>(j) / (kSegmentSamples - 1);
    if (!domain.contains(p + s * (q - p))) {
      throw InvalidInput("polyline segment leaves the domain");
    }
  }
}

double segment_length_fixed(const PlanarDomain& domain, Complex p, Complex q, int order) {
  const auto& rule = quadrature::gauss_legendre(order);
  double sum = 0.0;
  for (int k = 0; k < order; ++k) {
    sum += rule.weights[k] * density(domain, p + rule.nodes[k] * (q - p));
  }
  return std::abs(q - p) * sum;
}

double segment_length(const PlanarDomain& domain, Complex p, Complex q) {
  double previous = segment_length_fixed(domain, p, q, 8);
  for (int order = 16; order <= 1024; order *= 2) {
    const double current = segment_length_fixed(domain, p, q, order);
    if (std::abs(current - previous) < 1e-12 * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  return previous;
}

}  // namespace

double path_length(const PlanarDomain& domain, const PathPolyline& path) {
  const auto& nodes = path.nodes();
  for (Complex z : nodes) require_inside(domain, z);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    require_segment_inside(domain, nodes[i], nodes[i + 1]);
    total += segment_length(domain, nodes[i], nodes[i + 1]);
  }
  return total;
}

double half_plane_distance(Complex z, Complex w) {
  if (!(z.real() > 0.0) || !(w.real() > 0.0)) {
    throw InvalidInput("half-plane distance requires Re z > 0 and Re w > 0");
  }
  if (z == w) return 0.0;
  const double denom = std::abs(z + std::conj(w));
  const double r = std::abs(z - w) / denom;
  const double one_minus_r2 = 4.0 * z.real() * w.real() / (denom * denom);
  return sigma_from_rho(r, one_minus_r2);
}

Complex cayley(Complex z) { return (1.0 - z) / (1.0 + z); }

namespace {

// Discrete path energy (N+1) * sum L_i^2 over the polyline z, x_1..x_N, w.
// Its minimisers are constant-speed discrete geodesics, and at such a point
// grad E = 2 L grad L, so grad E / (2 L) is reported as the length gradient.
class PathEnergy {
 public:
  PathEnergy(const PlanarDomain& domain, Complex z, Complex w, std::size_t interior)
      : domain_(domain), z_(z), w_(w), interior_(interior) {}

  std::size_t dimension() const { return 2 * interior_; }

  Complex node(const std::vector<double>& x, std::size_t i) const {
    if (i == 0) return z_;
    if (i == interior_ + 1) return w_;
    return {x[2 * (i - 1)], x[2 * (i - 1) + 1]};
  }

  // Returns +inf when a node leaves the domain; otherwise fills grad.
  double evaluate(const std::vector<double>& x, std::vector<double>* grad, double* length) const {
    const std::size_t segments = interior_ + 1;
    for (std::size_t i = 1; i <= interior_; ++i) {
      if (!domain_.contains(node(x, i))) return kInf;
    }
    const auto& rule = quadrature::gauss_legendre(kOrder);
    if (grad) grad->assign(x.size(), 0.0);
    double energy = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < segments; ++i) {
      const Complex p = node(x, i);
      const Complex q = node(x, i + 1);
      const Complex d = q - p;
      const double len = std::abs(d);
      if (len == 0.0) continue;
      double integral = 0.0;
      Complex moment_p{};  // sum w_k (1 - s_k) grad h
      Complex moment_q{};  // sum w_k s_k grad h
      for (int k = 0; k < kOrder; ++k) {
        const Complex y = p + rule.nodes[k] * d;
        integral += rule.weights[k] * density(domain_, y);
        if (grad) {
          const Complex g = density_gradient(domain_, y);
          moment_p += rule.weights[k] * (1.0 - rule.nodes[k]) * g;
          moment_q += rule.weights[k] * rule.nodes[k] * g;
        }
      }
      const double seg = len * integral;
      total += seg;
      energy += seg * seg;
      if (grad) {
        const Complex unit = d / len;
        const Complex dp = -unit * integral + len * moment_p;
        const Complex dq = unit * integral + len * moment_q;
        const double scale = 2.0 * static_cast<double>(segments) * seg;
        if (i >= 1) {
          (*grad)[2 * (i - 1)] += scale * dp.real();
          (*grad)[2 * (i - 1) + 1] += scale * dp.imag();
        }
        if (i + 1 <= interior_) {
          (*grad)[2 * i] += scale * dq.real();
          (*grad)[2 * i + 1] += scale * dq.imag();
        }
      }
    }
    if (length) *length = total;
    return static_cast<double>(segments) * energy;
  }

  // Applies the inverse of the energy Hessian with the density frozen per
  // segment: 2 (N+1) tridiag(-a_{i-1}, a_{i-1} + a_i, -a_i), a_i = mean h^2.
  void precondition(const std::vector<double>& x, std::vector<double>& v) const {
    const std::size_t segments = interior_ + 1;
    const auto& rule = quadrature::gauss_legendre(kOrder);
    std::vector<double> a(segments);
    for (std::size_t i = 0; i < segments; ++i) {
      const Complex p = node(x, i);
      const Complex d = node(x, i + 1) - p;
      double mean = 0.0;
      for (int k = 0; k < kOrder; ++k) mean += rule.weights[k] * density(domain_, p + rule.nodes[k] * d);
      a[i] = 2.0 * static_cast<double>(segments) * mean * mean;
    }
    // Thomas algorithm, once per real coordinate
    const std::size_t n = interior_;
    std::vector<double> c(n), r(n);
    for (std::size_t part = 0; part < 2; ++part) {
      for (std::size_t i = 0; i < n; ++i) r[i] = v[2 * i + part];
      double beta = a[0] + a[1];
      r[0] /= beta;
      for (std::size_t i = 1; i < n; ++i) {
        c[i - 1] = -a[i] / beta;
        beta = a[i] + a[i + 1] + a[i] * c[i - 1];
        r[i] = (r[i] + a[i] * r[i - 1]) / beta;
      }
      for (std::size_t i = n - 1; i-- > 0;) r[i] -= c[i] * r[i + 1];
      for (std::size_t i = 0; i < n; ++i) v[2 * i + part] = r[i];
    }
  }

 private:
  static constexpr int kOrder = 8;

  const PlanarDomain& domain_;
  Complex z_;
  Complex w_;
  std::size_t interior_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Limited-memory BFGS with Armijo backtracking; infeasible trial points are
// treated as +inf and simply backtracked from.
OptimizerStats minimise(const PathEnergy& energy, std::vector<double>& x,
                        const VariationalOptions& options) {
  constexpr std::size_t kMemory = 8;
  const std::size_t n = x.size();
  std::vector<double> g(n), g_new(n), x_new(n), d(n);
  double length = 0.0;
  double f = energy.evaluate(x, &g, &length);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  OptimizerStats stats;
  stats.converged = false;
  auto length_gradient_norm = [&](const std::vector<double>& grad, double len) {
    return len > 0.0 ? inf_norm(grad) / (2.0 * len) : 0.0;
  };
  stats.gradient_norm = length_gradient_norm(g, length);

  for (stats.iterations = 0; stats.iterations < options.max_iterations; ++stats.iterations) {
    if (stats.gradient_norm < options.gradient_tol) {
      stats.converged = true;
      break;
    }
    // two-loop recursion
    d = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t j = s_hist.size(); j-- > 0;) {
      alpha[j] = rho_hist[j] * dot(s_hist[j], d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[j] * y_hist[j][i];
    }
    energy.precondition(x, d);
    for (std::size_t j = 0; j < s_hist.size(); ++j) {
      const double beta = rho_hist[j] * dot(y_hist[j], d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[j] - beta) * s_hist[j][i];
    }
    for (double& v : d) v = -v;

    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = g;
      energy.precondition(x, d);
      for (double& v : d) v = -v;
      slope = dot(g, d);
    }

    // Armijo, or near the optimum where energy differences drown in rounding,
    // the approximate Wolfe test on the directional derivative.
    double step = 1.0;
    double f_new = kInf;
    double length_new = 0.0;
    bool accepted = false;
    for (int trial = 0; trial < 60; ++trial) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      f_new = energy.evaluate(x_new, &g_new, &length_new);
      if (f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      if (std::isfinite(f_new) && f_new <= f + 1e-10 * std::abs(f)) {
        const double slope_new = dot(g_new, d);
        if (slope_new >= 0.9 * slope && slope_new <= -0.8 * slope) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further decrease representable in double precision

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    length = length_new;
    stats.gradient_norm = length_gradient_norm(g, length);
  }
  if (stats.gradient_norm < options.gradient_tol) stats.converged = true;
  return stats;
}

DistanceResult variational_distance(const PlanarDomain& domain, Complex z, Complex w,
                                    const VariationalOptions& options) {
  const std::size_t interior = options.interior_nodes;
  if (interior == 0) throw InvalidInput("variational distance requires interior nodes");
  PathEnergy energy(domain, z, w, interior);
  std::vector<double> x(energy.dimension());
  for (std::size_t i = 1; i <= interior; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(interior + 1);
    const Complex p = z + s * (w - z);
    x[2 * (i - 1)] = p.real();
    x[2 * (i - 1) + 1] = p.imag();
  }
  if (!std::isfinite(energy.evaluate(x, nullptr, nullptr))) {
    throw InvalidInput("straight initial path leaves the domain");
  }
  OptimizerStats stats = minimise(energy, x, options);

  std::vector<Complex> nodes;
  nodes.reserve(interior + 2);
  for (std::size_t i = 0; i <= interior + 1; ++i) {
    const Complex p = energy.node(x, i);
    if (nodes.empty() || nodes.back() != p) nodes.push_back(p);
  }
  if (nodes.size() < 2) nodes = {z, w};
  PathPolyline path(std::move(nodes));
  DistanceResult result;
  result.value = path_length(domain, path);
  result.method = DistanceMethod::variational;
  result.certificate = DistanceCertificate{std::move(path), stats};
  return result;
}

}  // namespace

DistanceResult distance(const PlanarDomain& domain, Complex z, Complex w,
                        const DistanceOptions& options) {
  require_inside(domain, z);
  require_inside(domain, w);
  const bool variational = options.force_variational || domain.kind() == DomainKind::strip;
  if (z == w) {
    DistanceResult zero;
    zero.method = variational ? DistanceMethod::variational : DistanceMethod::closed_form;
    return zero;
  }
  if (variational) return variational_distance(domain, z, w, options.variational);

  DistanceResult result;
  result.method = DistanceMethod::closed_form;
  if (domain.kind() == DomainKind::poincare_disk) {
    result.value = hyperbolic_sigma(DiskPoint(z), DiskPoint(w));
  } else {
    result.value = half_plane_distance(z, w);
  }
  return result;
}

namespace {

// Metric length from p along the segment to p + tau (q - p).
double partial_length(const PlanarDomain& domain, Complex p, Complex q, double tau) {
  const auto& rule = quadrature::gauss_legendre(32);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * density(domain, p + tau * rule.nodes[k] * (q - p));
  }
  return tau * std::abs(q - p) * sum;
}

// Inverse of partial_length by safeguarded Newton iteration.
double invert_partial_length(const PlanarDomain& domain, Complex p, Complex q, double target,
                             double total) {
  double lo = 0.0, hi = 1.0;
  double tau = target / total;
  const double scale = std::abs(q - p);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = partial_length(domain, p, q, tau) - target;
    if (f > 0.0) hi = tau; else lo = tau;
    const double df = scale * density(domain, p + tau * (q - p));
    double next = tau - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - tau) < 1e-16) return next;
    tau = next;
  }
  return tau;
}

}  // namespace

double unit_tangent_norm_check(const PlanarDomain& domain, const PathPolyline& path) {
  const auto& nodes = path.nodes();
  for (Complex z : nodes) require_inside(domain, z);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Complex p = nodes[i];
    const Complex q = nodes[i + 1];
    require_segment_inside(domain, p, q);
    const double total = partial_length(domain, p, q, 1.0);
    if (!(total > 1e-300)) continue;
    // gamma(s) = p + tau(s) (q - p) is the arc-length parameterisation of the
    // segment; differentiate tau rather than gamma to keep tiny segments exact.
    auto tau = [&](double s) { return invert_partial_length(domain, p, q, s, total); };
    const double mid = 0.5 * total;
    const double ds = 1e-4 * total;
    const Complex tangent = (tau(mid + ds) - tau(mid - ds)) / (2.0 * ds) * (q - p);
    const double h = density(domain, p + tau(mid) * (q - p));
    worst = std::max(worst, std::abs(h * h * std::norm(tangent) - 1.0));
  }
  return worst;
}

}  // namespace hypcon
