#pragma once

#include "ticktrack/core.hpp"
#include "ticktrack/objective.hpp"

#include <span>

namespace ticktrack {

/// Which velocity component an update may change.
///   +1: only vx changes (vy = vy_old)
///   -1: only vy changes (vx = vx_old)
///    0: no change (u = u_old)
enum class SparsitySwitch : int
{
  vertical = -1,
  hold = 0,
  horizontal = 1,
};

int to_int(SparsitySwitch d);

struct Interval
{
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
  double clamp(double v) const;
  /// Distance of v outside [lo, hi]; 0 inside.
  double violation(double v) const;
};

/// Per-axis velocities that keep every state of a W-step constant-velocity
/// roll-out inside the display. Motion is monotone, so only k = W binds.
struct VelocityBox
{
  Interval x;
  Interval y;

  bool contains(const Control& u, double slack = 0.0) const
  {
    return x.contains(u.vx, slack) && y.contains(u.vy, slack);
  }
  Control clamp(const Control& u) const { return {x.clamp(u.vx), y.clamp(u.vy)}; }
};

struct SolveResult
{
  SparsitySwitch d_s = SparsitySwitch::hold;
  Control u;
  CostBreakdown cost;
  bool feasible = true;
};

/// Throws InfeasibleState when `state` is outside the display.
VelocityBox velocity_box(const State& state, const DisplayBounds& bounds, std::size_t window, double dt);

/// Penalty-free tracker: steps straight onto the next reference point,
/// clamped componentwise so the next state stays on the display.
Control baseline_step(const State& state, const State& ref_next, const DisplayBounds& bounds, double dt);

/// Exact minimizer of the human-like receding-horizon program.
///
/// The window constraint makes the decision a single velocity held for W
/// steps, and the sparsity switch freezes one component, so each integer
/// branch reduces to a scalar piecewise-quadratic problem. Breakpoints of the
/// free component v sit at 0 and at +-|frozen component|. Every piece is
/// minimized in closed form and the best candidate across pieces, breakpoints
/// and box endpoints wins.
///
/// Equal-cost branches resolve to hold, then horizontal, then vertical.
/// If no branch is feasible, the branch with the smallest bound violation is
/// returned with `feasible == false`.
SolveResult humanlike_solve(const State& state,
                            const Control& u_old,
                            std::span<const State> reference,
                            const HumanLikeParams& params);

} // namespace ticktrack
