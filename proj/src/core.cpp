#include "ticktrack/core.hpp"

#include <cmath>
#include <string>

namespace ticktrack {

namespace {

bool finite(double v) { return std::isfinite(v); }

} // namespace

double Control::l1() const { return std::abs(vx) + std::abs(vy); }

bool DisplayBounds::contains(const State& s) const
{
  return s.x >= 0.0 && s.x <= width && s.y >= 0.0 && s.y <= height;
}

void DisplayBounds::validate() const
{
  if (!(finite(width) && width > 0.0))
    throw ValidationError("bounds.width > 0", "got " + std::to_string(width));
  if (!(finite(height) && height > 0.0))
    throw ValidationError("bounds.height > 0", "got " + std::to_string(height));
}

void HumanLikeParams::validate() const
{
  if (!(finite(lambda1) && lambda1 >= 0.0))
    throw ValidationError("lambda1 >= 0", "got " + std::to_string(lambda1));
  if (!(finite(lambda2) && lambda2 >= 0.0))
    throw ValidationError("lambda2 >= 0", "got " + std::to_string(lambda2));
  if (!(finite(sigma_eps) && sigma_eps >= 0.0))
    throw ValidationError("sigma_eps >= 0", "got " + std::to_string(sigma_eps));
  if (window < 1)
    throw ValidationError("window >= 1", "got 0");
  if (!(finite(speed_target) && speed_target > 0.0))
    throw ValidationError("speed_target > 0", "got " + std::to_string(speed_target));
  if (!(finite(dt) && dt > 0.0))
    throw ValidationError("dt > 0", "got " + std::to_string(dt));
  bounds.validate();
}

std::vector<State> Trajectory::states() const
{
  std::vector<State> out;
  out.reserve(samples.size());
  for (const auto& s : samples)
    out.push_back(s.state);
  return out;
}

void validate_trajectory(const Trajectory& traj, double tolerance)
{
  if (!(finite(traj.dt) && traj.dt > 0.0))
    throw ValidationError("dt > 0", "got " + std::to_string(traj.dt));
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const Sample& s = traj.samples[i];
    if (s.n != i)
      throw ValidationError("step indices consecutive from 0",
                            "sample " + std::to_string(i) + " has n=" + std::to_string(s.n));
    if (!(finite(s.state.x) && finite(s.state.y) && finite(s.control.vx) && finite(s.control.vy)))
      throw ValidationError("finite values", "sample " + std::to_string(i));
  }
  if (!traj.samples.empty() && !traj.samples.front().event)
    throw ValidationError("event at step 0", "first sample has event=0");
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const Sample& a = traj.samples[i];
    const State next = step(a.state, a.control, traj.dt);
    const State& actual = traj.samples[i + 1].state;
    if (std::abs(next.x - actual.x) > tolerance || std::abs(next.y - actual.y) > tolerance)
      throw ValidationError("self-consistency state(n+1) = state(n) + control(n)*dt",
                            "violated between steps " + std::to_string(i) + " and " +
                              std::to_string(i + 1));
  }
}

State step(const State& state, const Control& control, double dt)
{
  if (!(finite(state.x) && finite(state.y) && finite(control.vx) && finite(control.vy) &&
        finite(dt)))
    throw InvalidArgument("step: non-finite input");
  if (!(dt > 0.0))
    throw InvalidArgument("step: dt must be positive");
  return {state.x + control.vx * dt, state.y + control.vy * dt};
}

Control update_u_old(const Control& u) { return u; }

} // namespace ticktrack
