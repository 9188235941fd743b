#include "hypcon/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypcon/errors.hpp"

namespace hypcon {

const char* to_string(Codomain codomain) noexcept {
  switch (codomain) {
    case Codomain::disk: return "disk";
    case Codomain::strip: return "strip";
    case Codomain::right_half_plane: return "right_half_plane";
  }
  return "?";
}

Codomain codomain_from_string(const std::string& name) {
  if (name == "disk") return Codomain::disk;
  if (name == "strip") return Codomain::strip;
  if (name == "right_half_plane" || name == "halfplane") return Codomain::right_half_plane;
  throw InvalidInput("unknown codomain '" + name + "'");
}

Interval real_part_interval(Codomain codomain) {
  if (codomain == Codomain::right_half_plane) {
    return Interval(0.0, std::numeric_limits<double>::infinity());
  }
  return Interval(-1.0, 1.0);
}

bool codomain_contains(Codomain codomain, Complex value) noexcept {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) return false;
  switch (codomain) {
    case Codomain::disk: return DiskPoint::admissible(value);
    case Codomain::strip: return std::abs(value.real()) < 1.0;
    case Codomain::right_half_plane: return value.real() > 0.0;
  }
  return false;
}

namespace {

Complex mobius(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

Complex mobius_deriv(Complex a, Complex z) {
  const Complex d = 1.0 - std::conj(a) * z;
  return -(1.0 - std::norm(a)) / (d * d);
}

HoloFunction blaschke_factor(Complex a) {
  return {"blaschke_factor",
          [a](Complex z) { return mobius(a, z); },
          [a](Complex z) { return mobius_deriv(a, z); },
          Codomain::disk,
          {{"a_re", a.real()}, {"a_im", a.imag()}},
          true};
}

HoloFunction blaschke_product(std::vector<Complex> zeros) {
  std::vector<std::pair<std::string, double>> params;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    params.emplace_back("a" + std::to_string(i + 1) + "_re", zeros[i].real());
    params.emplace_back("a" + std::to_string(i + 1) + "_im", zeros[i].imag());
  }
  auto eval = [zeros](Complex z) {
    Complex p = 1.0;
    for (Complex a : zeros) p *= mobius(a, z);
    return p;
  };
  auto deriv = [zeros](Complex z) {
    // product rule
    Complex sum{};
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      Complex term = mobius_deriv(zeros[i], z);
      for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (j != i) term *= mobius(zeros[j], z);
      }
      sum += term;
    }
    return sum;
  };
  return {"blaschke_product", eval, deriv, Codomain::disk, std::move(params), false};
}

HoloFunction power(std::string id, Complex c, int d) {
  return {std::move(id),
          [c, d](Complex z) { return c * std::pow(z, d); },
          [c, d](Complex z) { return d == 0 ? Complex{} : c * static_cast<double>(d) * std::pow(z, d - 1); },
          Codomain::disk,
          {{"c_re", c.real()}, {"c_im", c.imag()}, {"d", static_cast<double>(d)}},
          false};
}

HoloFunction strip_map(std::string id, double scale) {
  // i (2/pi) Log((1 + z) / (1 - z)); (1 + z)/(1 - z) has positive real part on
  // the disk so the principal branch is single valued there.
  const Complex c{0.0, scale * 2.0 / std::numbers::pi};
  return {std::move(id),
          [c](Complex z) { return c * std::log((1.0 + z) / (1.0 - z)); },
          [c](Complex z) { return c * 2.0 / (1.0 - z * z); },
          Codomain::strip,
          {{"scale", scale}},
          false};
}

}  // namespace

std::vector<HoloFunction> catalog() {
  std::vector<HoloFunction> out;
  out.push_back({"identity", [](Complex z) { return z; }, [](Complex) { return Complex{1.0, 0.0}; },
                 Codomain::disk, {}, true});
  out.push_back(blaschke_factor({0.5, 0.3}));
  out.push_back(blaschke_product({{0.5, 0.0}, {-0.3, 0.4}, {0.2, -0.6}}));
  out.push_back(power("z_squared", 1.0, 2));
  out.push_back(power("scaled_cube", {0.7, 0.2}, 3));
  out.push_back({"cayley", [](Complex z) { return (1.0 - z) / (1.0 + z); },
                 [](Complex z) { return -2.0 / ((1.0 + z) * (1.0 + z)); },
                 Codomain::right_half_plane, {}, false});
  out.push_back({"sqrt_cayley", [](Complex z) { return std::sqrt((1.0 - z) / (1.0 + z)); },
                 [](Complex z) {
                   // d/dz sqrt(c(z)) = c'(z) / (2 sqrt(c(z)))
                   const Complex c = (1.0 - z) / (1.0 + z);
                   return -1.0 / ((1.0 + z) * (1.0 + z) * std::sqrt(c));
                 },
                 Codomain::right_half_plane, {}, false});
  out.push_back(strip_map("strip_map", 1.0));
  out.push_back(strip_map("strip_map_scaled", 0.6));
  out.push_back({"constant", [](Complex) { return Complex{0.3, 0.1}; },
                 [](Complex) { return Complex{}; }, Codomain::disk,
                 {{"c_re", 0.3}, {"c_im", 0.1}}, false});
  out.push_back({"scaled_exp", [](Complex z) { return 0.5 * std::exp(0.4 * z); },
                 [](Complex z) { return 0.2 * std::exp(0.4 * z); }, Codomain::disk,
                 {{"scale", 0.5}, {"rate", 0.4}}, false});
  return out;
}

const HoloFunction* find_function(const std::vector<HoloFunction>& functions,
                                  const std::string& id) {
  for (const auto& f : functions) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

double eval_re(const HoloFunction& f, DiskPoint z) { return f.eval(z.value()).real(); }

double eval_abs(const HoloFunction& f, DiskPoint z) {
  if (f.codomain != Codomain::disk) {
    throw InvalidInput("eval_abs requires a disk-valued function, '" + f.id + "' maps into " +
                       to_string(f.codomain));
  }
  return std::abs(f.eval(z.value()));
}

namespace {

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
  return d;
}

}  // namespace

HoloFunction rational_function(std::string id, std::vector<Complex> numerator,
                               std::vector<Complex> denominator, Codomain codomain) {
  if (numerator.empty()) numerator = {0.0};
  if (denominator.empty()) throw InvalidInput("rational function '" + id + "' needs a denominator");
  for (Complex c : numerator) require_finite(c, "numerator coefficient");
  for (Complex c : denominator) require_finite(c, "denominator coefficient");
  if (std::all_of(denominator.begin(), denominator.end(), [](Complex c) { return c == 0.0; })) {
    throw InvalidInput("rational function '" + id + "' has a zero denominator");
  }
  const auto dn = derivative(numerator);
  const auto dd = derivative(denominator);
  std::vector<std::pair<std::string, double>> params;
  params.emplace_back("numerator_degree", static_cast<double>(numerator.size() - 1));
  params.emplace_back("denominator_degree", static_cast<double>(denominator.size() - 1));
  auto eval = [numerator, denominator](Complex z) {
    return horner(numerator, z) / horner(denominator, z);
  };
  auto deriv = [numerator, denominator, dn, dd](Complex z) {
    const Complex q = horner(denominator, z);
    return (horner(dn, z) * q - horner(numerator, z) * horner(dd, z)) / (q * q);
  };
  return {std::move(id), eval, deriv, codomain, std::move(params), false};
}

HoloFunction compose_with_mobius(const HoloFunction& f, DiskPoint a) {
  const Complex av = a.value();
  HoloFunction out;
  out.id = f.id + "_o_mobius";
  out.codomain = f.codomain;
  out.params = f.params;
  out.params.emplace_back("mobius_re", av.real());
  out.params.emplace_back("mobius_im", av.imag());
  out.automorphism = f.automorphism;
  out.eval = [g = f.eval, av](Complex z) { return g(mobius(av, z)); };
  out.deriv = [g = f.deriv, av](Complex z) { return g(mobius(av, z)) * mobius_deriv(av, z); };
  return out;
}

namespace {

template <class Fn>
void polar_grid(std::size_t samples, double radius_cap, Fn&& visit) {
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
  for (std::size_t i = 0; i < side; ++i) {
    const double r = radius_cap * static_cast<double>(i) / static_cast<double>(side - 1);
    for (std::size_t j = 0; j < side; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(side);
      visit(std::polar(r, theta));
    }
  }
}

}  // namespace

CodomainCheck validate_codomain(const HoloFunction& f, std::size_t samples, double radius_cap) {
  CodomainCheck check;
  polar_grid(samples, radius_cap, [&](Complex z) {
    ++check.samples;
    const Complex value = f.eval(z);
    if (check.ok && !codomain_contains(f.codomain, value)) {
      check.ok = false;
      check.offending_point = z;
      check.offending_value = value;
    }
  });
  return check;
}

double derivative_consistency(const HoloFunction& f, std::size_t samples, double radius_cap) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon());
  double worst = 0.0;
  polar_grid(samples, radius_cap, [&](Complex z) {
    const Complex analytic = f.deriv(z);
    const Complex numeric = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
    const double scale = std::max(std::abs(analytic), 1.0);
    worst = std::max(worst, std::abs(analytic - numeric) / scale);
  });
  return worst;
}

}  // namespace hypcon
