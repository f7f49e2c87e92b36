#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ticktrack::oracle {

double reference_cost(const State& state,
                      const Control& u,
                      std::span<const State> reference,
                      const HumanLikeParams& params)
{
  const std::size_t W = params.window;
  if (reference.size() != W)
    throw InvalidArgument("oracle: reference length mismatch");
  double sq = 0.0;
  for (std::size_t k = 1; k <= W; ++k) {
    const double t = static_cast<double>(k) * params.dt;
    const double dx = state.x + t * u.vx - reference[k - 1].x;
    const double dy = state.y + t * u.vy - reference[k - 1].y;
    sq += dx * dx + dy * dy;
  }
  const double speed = std::fabs(u.vx) + std::fabs(u.vy);
  const double diag = std::fabs(std::fabs(u.vx) - std::fabs(u.vy));
  return sq / static_cast<double>(W) + params.lambda1 * diag +
         params.lambda2 * (speed - params.speed_target) * (speed - params.speed_target);
}

SolveResult brute_force_solve(const State& state,
                              const Control& u_old,
                              std::span<const State> reference,
                              const HumanLikeParams& params,
                              double grid_resolution)
{
  if (!(grid_resolution > 0.0))
    throw InvalidArgument("oracle: grid resolution must be positive");
  if (reference.size() != params.window)
    throw InvalidArgument("oracle: reference length mismatch");
  const double horizon = static_cast<double>(params.window) * params.dt;
  const double x_lo = -state.x / horizon;
  const double x_hi = (params.bounds.width - state.x) / horizon;
  const double y_lo = -state.y / horizon;
  const double y_hi = (params.bounds.height - state.y) / horizon;
  auto inside = [](double v, double lo, double hi) {
    return v >= lo - 1e-12 && v <= hi + 1e-12;
  };

  auto scan = [&](double lo, double hi, double frozen, bool free_x) {
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / grid_resolution));
    for (std::size_t i = 0; i <= n; ++i)
      grid.push_back(lo + static_cast<double>(i) * grid_resolution);
    grid.push_back(hi);
    for (double b : {0.0, std::fabs(frozen), -std::fabs(frozen)})
      if (b >= lo && b <= hi)
        grid.push_back(b);
    SolveResult best;
    best.cost.total = INFINITY;
    for (double v : grid) {
      const Control u = free_x ? Control{v, frozen} : Control{frozen, v};
      const double c = reference_cost(state, u, reference, params);
      if (c < best.cost.total) {
        best.u = u;
        best.cost.total = c;
      }
    }
    return best;
  };

  SolveResult best;
  best.cost.total = INFINITY;
  best.feasible = false;
  if (inside(u_old.vx, x_lo, x_hi) && inside(u_old.vy, y_lo, y_hi)) {
    best.d_s = SparsitySwitch::hold;
    best.u = u_old;
    best.cost.total = reference_cost(state, u_old, reference, params);
    best.feasible = true;
  }
  if (inside(u_old.vy, y_lo, y_hi)) {
    SolveResult r = scan(x_lo, x_hi, u_old.vy, true);
    if (r.cost.total < best.cost.total) {
      best = r;
      best.d_s = SparsitySwitch::horizontal;
      best.feasible = true;
    }
  }
  if (inside(u_old.vx, x_lo, x_hi)) {
    SolveResult r = scan(y_lo, y_hi, u_old.vx, false);
    if (r.cost.total < best.cost.total) {
      best = r;
      best.d_s = SparsitySwitch::vertical;
      best.feasible = true;
    }
  }
  return best;
}

} // namespace ticktrack::oracle
