#include "hypcon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hypcon/errors.hpp"

namespace hypcon {

const char* to_string(SampleScheme scheme) noexcept {
  return scheme == SampleScheme::uniform_disk ? "uniform_disk" : "boundary_biased";
}

SampleScheme sample_scheme_from_string(const std::string& name) {
  if (name == "uniform_disk") return SampleScheme::uniform_disk;
  if (name == "boundary_biased") return SampleScheme::boundary_biased;
  throw InvalidInput("unknown sampling scheme '" + name + "'");
}

void SampleSpec::validate() const {
  if (count < 1) throw InvalidInput("sample count must be at least 1");
  if (!(radius_cap > 0.0 && radius_cap <= 1.0 - kBoundaryGuard)) {
    throw InvalidInput("radius_cap must lie in (0, 1 - boundary_guard]");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : state_(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

double SampleStream::uniform() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

double sample_radius(SampleScheme scheme, double radius_cap, double u, std::size_t real_dim) {
  if (scheme == SampleScheme::boundary_biased) {
    return std::min(radius_cap, 1.0 - std::pow(10.0, -3.0 * u));
  }
  return radius_cap * std::pow(u, 1.0 / static_cast<double>(real_dim));
}

namespace {

DiskPoint draw_disk_point(const SampleSpec& spec, SampleStream& stream) {
  const double r = sample_radius(spec.scheme, spec.radius_cap, stream.uniform());
  const double theta = 2.0 * std::numbers::pi * stream.uniform();
  return DiskPoint(std::polar(r, theta));
}

BallPoint draw_ball_point(const SampleSpec& spec, std::size_t n, SampleStream& stream) {
  ComplexVector v(n);
  double len = 0.0;
  do {
    len = 0.0;
    for (auto& c : v) {
      // Box-Muller: one complex Gaussian per coordinate
      const double u1 = 1.0 - stream.uniform();
      const double u2 = stream.uniform();
      c = std::polar(std::sqrt(-2.0 * std::log(u1)), 2.0 * std::numbers::pi * u2);
      len += std::norm(c);
    }
  } while (len == 0.0);
  len = std::sqrt(len);
  const double r = sample_radius(spec.scheme, spec.radius_cap, stream.uniform(), 2 * n);
  for (auto& c : v) c *= r / len;
  return BallPoint(std::move(v));
}

}  // namespace

PointPair sample_disk_pair(const SampleSpec& spec, std::size_t index) {
  SampleStream stream(spec.seed, index);
  DiskPoint z = draw_disk_point(spec, stream);
  DiskPoint w = draw_disk_point(spec, stream);
  return {z, w};
}

BallPair sample_ball_pair(const SampleSpec& spec, std::size_t n, std::size_t index) {
  if (n < 1) throw InvalidInput("ball dimension must be at least 1");
  SampleStream stream(spec.seed ^ (0xba11ULL * n), index);
  BallPoint z = draw_ball_point(spec, n, stream);
  BallPoint w = draw_ball_point(spec, n, stream);
  return {std::move(z), std::move(w)};
}

}  // namespace hypcon
