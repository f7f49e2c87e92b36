#pragma once

#include <cstdint>
#include <random>

namespace ticktrack {

/// Seedable, splittable pseudo-random source owned by one simulation run.
///
/// Draws are produced from std::mt19937_64 with explicit transforms rather
/// than std::*_distribution, whose algorithms are implementation-defined, so
/// a seed yields the same stream on every platform.
class Rng
{
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1), 53 bits of resolution. Consumes one engine draw.
  double uniform();

  /// Standard normal via Box-Muller. Consumes exactly two engine draws.
  double normal();

  /// Independent child source derived from this source's seed and `stream`.
  Rng split(std::uint64_t stream) const;

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniform trigger indicator d_t in [0, 1]; one draw from `rng`.
double sample_indicator(Rng& rng);

} // namespace ticktrack
