#pragma once

#include "ticktrack/errors.hpp"

#include <cstddef>
#include <vector>

namespace ticktrack {

/// Pointer position in continuous pixel coordinates. y grows downward.
struct State
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

/// Pointer velocity in pixels/second.
struct Control
{
  double vx = 0.0;
  double vy = 0.0;

  double l1() const;

  friend bool operator==(const Control&, const Control&) = default;
};

struct DisplayBounds
{
  double width = 1920.0;
  double height = 1080.0;

  bool contains(const State& s) const;
  void validate() const;

  friend bool operator==(const DisplayBounds&, const DisplayBounds&) = default;
};

/// Tuned constants of the human-like controller.
struct HumanLikeParams
{
  double lambda1 = 32.0;
  double lambda2 = 0.6;
  double sigma_eps = 2.0;     // pixels/second
  std::size_t window = 8;     // prediction steps W
  double speed_target = 63.75; // pixels/second
  double dt = 0.283;          // seconds
  DisplayBounds bounds;

  /// Throws ValidationError naming the first violated constraint.
  void validate() const;
};

struct Sample
{
  std::size_t n = 0;
  State state;
  Control control; // applied at step n
  bool event = false;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Time-indexed pointer path sampled every `dt` seconds.
struct Trajectory
{
  double dt = 0.283;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  const Sample& operator[](std::size_t i) const { return samples[i]; }

  std::vector<State> states() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Tolerance used for the state(n+1) = state(n) + control(n)*dt check.
inline constexpr double kConsistencyTolerance = 1e-9;

/// Checks indices, the first-event flag and kinematic self-consistency.
void validate_trajectory(const Trajectory& traj, double tolerance = kConsistencyTolerance);

/// One kinematic transition: s + u*dt.
State step(const State& state, const Control& control, double dt);

/// Memory update of the previously applied action: u_old <- u.
Control update_u_old(const Control& u);

} // namespace ticktrack
