#pragma once

// Deterministic sampling. Every sample is a pure function of (seed, index), so
// results do not depend on how the index range is split across threads.

#include <cstddef>
#include <cstdint>
#include <string>

#include "hypcon/ball.hpp"
#include "hypcon/disk.hpp"

namespace hypcon {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2019'0b1a'5ULL;

enum class SampleScheme { uniform_disk, boundary_biased };

const char* to_string(SampleScheme scheme) noexcept;
SampleScheme sample_scheme_from_string(const std::string& name);

struct SampleSpec {
  std::size_t count = 10'000;
  std::uint64_t seed = kDefaultSeed;
  double radius_cap = 0.999;
  SampleScheme scheme = SampleScheme::uniform_disk;

  /// Throws InvalidInput unless count >= 1 and 0 < radius_cap <= 1 - guard.
  void validate() const;
};

/// Counter-based uniform stream on [0, 1) keyed by (seed, index).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);
  double uniform();

 private:
  std::uint64_t state_;
};

/// Radius for a uniform variate: cap * sqrt(u) (uniform in area) or
/// min(cap, 1 - 10^(-3u)) (boundary biased).
double sample_radius(SampleScheme scheme, double radius_cap, double u, std::size_t real_dim = 2);

struct PointPair {
  DiskPoint z;
  DiskPoint w;
};

PointPair sample_disk_pair(const SampleSpec& spec, std::size_t index);

struct BallPair {
  BallPoint z;
  BallPoint w;
};

/// Uniform directions on the sphere of C^n, radius from the scheme (uniform in
/// volume for uniform_disk).
BallPair sample_ball_pair(const SampleSpec& spec, std::size_t n, std::size_t index);

}  // namespace hypcon
