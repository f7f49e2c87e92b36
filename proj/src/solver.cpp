#include "ticktrack/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ticktrack {

namespace {

// Bound violations below this many pixels count as feasible (float rounding
// on values that were clamped to the box at an earlier state).
constexpr double kPixelSlack = 1e-9;
constexpr double kCandidateDedup = 1e-12;

enum class Axis
{
  x,
  y
};

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

std::size_t steps_outside(double pos, double v, double extent, std::size_t window, double dt)
{
  std::size_t out = 0;
  for (std::size_t k = 1; k <= window; ++k) {
    const double p = pos + static_cast<double>(k) * dt * v;
    if (p < -kPixelSlack || p > extent + kPixelSlack)
      ++out;
  }
  return out;
}

struct BranchSolution
{
  Control u;
  CostBreakdown cost;
};

// Minimizes total_cost over the free component on `axis`, the other
// component held at its u_old value, within `free_box`.
BranchSolution solve_branch(Axis axis,
                            const State& state,
                            const Control& u_old,
                            std::span<const State> reference,
                            const HumanLikeParams& params,
                            const Interval& free_box)
{
  const double frozen = axis == Axis::x ? u_old.vy : u_old.vx;
  const double a = std::abs(frozen);
  const double pos = axis == Axis::x ? state.x : state.y;
  const double dt = params.dt;
  const auto W = static_cast<double>(params.window);

  // Tracking term in the free component v: q*v^2 + lin*v + const.
  double q = 0.0;
  double lin = 0.0;
  for (std::size_t k = 1; k <= params.window; ++k) {
    const double kd = static_cast<double>(k) * dt;
    const double ref = axis == Axis::x ? reference[k - 1].x : reference[k - 1].y;
    q += kd * kd;
    lin += 2.0 * kd * (pos - ref);
  }
  q /= W;
  lin /= W;

  auto make_control = [&](double v) {
    return axis == Axis::x ? Control{v, u_old.vy} : Control{u_old.vx, v};
  };

  std::vector<double> breakpoints{-a, 0.0, a};
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  std::vector<double> candidates{free_box.lo, free_box.hi};
  for (double b : breakpoints)
    if (free_box.contains(b))
      candidates.push_back(b);

  // Stationary point of every piece between consecutive breakpoints.
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
    const double left = i == 0 ? -inf : breakpoints[i - 1];
    const double right = i == breakpoints.size() ? inf : breakpoints[i];
    double probe;
    if (std::isinf(left))
      probe = right - 1.0;
    else if (std::isinf(right))
      probe = left + 1.0;
    else
      probe = 0.5 * (left + right);
    const double s1 = sign_of(probe);                 // sign of v
    const double s2 = sign_of(std::abs(probe) - a);   // sign of |v| - a
    const double quad = q + params.lambda2;
    const double slope = lin + params.lambda1 * s1 * s2 +
                         2.0 * params.lambda2 * s1 * (a - params.speed_target);
    const double v = -slope / (2.0 * quad);
    if (v >= left && v <= right && free_box.contains(v))
      candidates.push_back(v);
  }

  std::sort(candidates.begin(), candidates.end());
  std::vector<double> unique;
  for (double c : candidates)
    if (unique.empty() || std::abs(c - unique.back()) > kCandidateDedup)
      unique.push_back(c);

  BranchSolution best{make_control(unique.front()),
                      total_cost(state, make_control(unique.front()), reference, params)};
  for (std::size_t i = 1; i < unique.size(); ++i) {
    const Control u = make_control(unique[i]);
    const CostBreakdown c = total_cost(state, u, reference, params);
    if (c.total < best.cost.total)
      best = {u, c};
  }
  return best;
}

} // namespace

int to_int(SparsitySwitch d) { return static_cast<int>(d); }

double Interval::clamp(double v) const { return std::clamp(v, lo, hi); }

double Interval::violation(double v) const
{
  if (v < lo)
    return lo - v;
  if (v > hi)
    return v - hi;
  return 0.0;
}

VelocityBox velocity_box(const State& state, const DisplayBounds& bounds, std::size_t window, double dt)
{
  if (!(std::isfinite(state.x) && std::isfinite(state.y)))
    throw InvalidArgument("velocity_box: non-finite state");
  if (window < 1 || !(dt > 0.0))
    throw InvalidArgument("velocity_box: window >= 1 and dt > 0 required");
  if (!bounds.contains(state))
    throw InfeasibleState("state (" + std::to_string(state.x) + ", " + std::to_string(state.y) +
                          ") is outside the display");
  const double horizon = static_cast<double>(window) * dt;
  return {{-state.x / horizon, (bounds.width - state.x) / horizon},
          {-state.y / horizon, (bounds.height - state.y) / horizon}};
}

Control baseline_step(const State& state, const State& ref_next, const DisplayBounds& bounds, double dt)
{
  const VelocityBox box = velocity_box(state, bounds, 1, dt);
  const Control wanted{(ref_next.x - state.x) / dt, (ref_next.y - state.y) / dt};
  if (!(std::isfinite(wanted.vx) && std::isfinite(wanted.vy)))
    throw InvalidArgument("baseline_step: non-finite reference");
  return box.clamp(wanted);
}

SolveResult humanlike_solve(const State& state,
                            const Control& u_old,
                            std::span<const State> reference,
                            const HumanLikeParams& params)
{
  params.validate();
  if (reference.size() != params.window)
    throw InvalidArgument("humanlike_solve: reference length " + std::to_string(reference.size()) +
                          " != window " + std::to_string(params.window));
  if (!(std::isfinite(u_old.vx) && std::isfinite(u_old.vy)))
    throw InvalidArgument("humanlike_solve: non-finite u_old");

  const VelocityBox box = velocity_box(state, params.bounds, params.window, params.dt);
  const double horizon = static_cast<double>(params.window) * params.dt;
  const double viol_x = box.x.violation(u_old.vx) * horizon;
  const double viol_y = box.y.violation(u_old.vy) * horizon;
  const std::size_t out_x = steps_outside(state.x, u_old.vx, params.bounds.width, params.window, params.dt);
  const std::size_t out_y = steps_outside(state.y, u_old.vy, params.bounds.height, params.window, params.dt);

  struct Branch
  {
    SparsitySwitch d_s;
    double violation;       // pixels past the display edge at k = W
    std::size_t steps_out;  // window steps spent past the edge
  };
  // Order is the tie-break preference.
  const std::array<Branch, 3> branches{{
    {SparsitySwitch::hold, std::max(viol_x, viol_y), std::max(out_x, out_y)},
    {SparsitySwitch::horizontal, viol_y, out_y},
    {SparsitySwitch::vertical, viol_x, out_x},
  }};

  auto evaluate = [&](SparsitySwitch d_s) -> SolveResult {
    SolveResult r;
    r.d_s = d_s;
    switch (d_s) {
    case SparsitySwitch::hold:
      r.u = u_old;
      r.cost = total_cost(state, u_old, reference, params);
      break;
    case SparsitySwitch::horizontal: {
      const auto b = solve_branch(Axis::x, state, u_old, reference, params, box.x);
      r.u = b.u;
      r.cost = b.cost;
      break;
    }
    case SparsitySwitch::vertical: {
      const auto b = solve_branch(Axis::y, state, u_old, reference, params, box.y);
      r.u = b.u;
      r.cost = b.cost;
      break;
    }
    }
    return r;
  };

  bool have = false;
  SolveResult best;
  for (const Branch& br : branches) {
    if (br.violation > kPixelSlack)
      continue;
    SolveResult r = evaluate(br.d_s);
    if (!have || r.cost.total < best.cost.total) {
      best = r;
      have = true;
    }
  }
  if (have)
    return best;

  // A frozen component that leaves the display sooner is worse, whatever
  // the final overshoot.
  const Branch* least = &branches[0];
  for (const Branch& br : branches)
    if (br.steps_out < least->steps_out ||
        (br.steps_out == least->steps_out && br.violation < least->violation))
      least = &br;
  SolveResult r = evaluate(least->d_s);
  r.feasible = false;
  return r;
}

} // namespace ticktrack
