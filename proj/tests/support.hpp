#pragma once

#include "ticktrack/core.hpp"
#include "ticktrack/io.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace ticktrack::testing {

/// Generators for property tests. std::uniform_real_distribution is fine
/// here: tests only need determinism on one platform.
class Gen
{
public:
  explicit Gen(std::uint64_t seed)
    : engine_(seed)
  {
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  State state(const DisplayBounds& b = {}) { return {uniform(0.0, b.width), uniform(0.0, b.height)}; }
  Control control(double mag) { return {uniform(-mag, mag), uniform(-mag, mag)}; }

  /// W-step reference window with one velocity kink, kept on the display.
  std::vector<State> piecewise_linear_window(const State& start,
                                             std::size_t window,
                                             double dt,
                                             const DisplayBounds& b = {})
  {
    const std::size_t kink = index(1, window);
    Control v1 = control(150.0);
    Control v2 = control(150.0);
    std::vector<State> out;
    State s{std::clamp(start.x + uniform(-30.0, 30.0), 0.0, b.width),
            std::clamp(start.y + uniform(-30.0, 30.0), 0.0, b.height)};
    for (std::size_t k = 1; k <= window; ++k) {
      const Control& v = k <= kink ? v1 : v2;
      s = {std::clamp(s.x + v.vx * dt, 0.0, b.width), std::clamp(s.y + v.vy * dt, 0.0, b.height)};
      out.push_back(s);
    }
    return out;
  }

  /// Random waypoint reference covering the display interior.
  ReferenceSpec waypoint_spec(std::size_t waypoints, std::size_t steps, double speed_lo, double speed_hi)
  {
    ReferenceSpec spec;
    for (std::size_t i = 0; i < waypoints; ++i)
      spec.waypoints.push_back({uniform(50.0, 1870.0), uniform(50.0, 1030.0)});
    for (std::size_t i = 0; i + 1 < waypoints; ++i)
      spec.speeds.push_back(uniform(speed_lo, speed_hi));
    if (spec.speeds.empty())
      spec.speeds.push_back(speed_lo);
    spec.steps = steps;
    return spec;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  explicit TempDir(const std::string& name)
    : path_(std::filesystem::temp_directory_path() / ("ticktrack_" + name + "_" + std::to_string(counter()++)))
  {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& f) const { return path_ / f; }

private:
  static int& counter()
  {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

} // namespace ticktrack::testing
