#include "ticktrack/random.hpp"

#include <cmath>
#include <numbers>

namespace ticktrack {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed)
  : seed_(seed)
  , engine_(splitmix64(seed))
{
}

double Rng::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
  // 1 - uniform() lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::split(std::uint64_t stream) const
{
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

double sample_indicator(Rng& rng) { return rng.uniform(); }

} // namespace ticktrack
