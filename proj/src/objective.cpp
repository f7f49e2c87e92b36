#include "ticktrack/objective.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ticktrack {

double mse_window(std::span<const State> predicted, std::span<const State> reference)
{
  if (predicted.empty())
    throw InvalidArgument("mse_window: empty window");
  if (predicted.size() != reference.size())
    throw InvalidArgument("mse_window: length mismatch (" + std::to_string(predicted.size()) +
                          " vs " + std::to_string(reference.size()) + ")");
  double sum = 0.0;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const double ex = predicted[k].x - reference[k].x;
    const double ey = predicted[k].y - reference[k].y;
    sum += ex * ex + ey * ey;
  }
  return sum / static_cast<double>(predicted.size());
}

double mu1(const Control& u) { return std::abs(std::abs(u.vx) - std::abs(u.vy)); }

double mu2(const Control& u, double speed_target)
{
  if (!(speed_target > 0.0))
    throw InvalidArgument("mu2: speed target must be positive");
  const double d = u.l1() - speed_target;
  return d * d;
}

CostBreakdown total_cost(const State& state,
                         const Control& u,
                         std::span<const State> reference,
                         const HumanLikeParams& params)
{
  if (reference.size() != params.window)
    throw InvalidArgument("total_cost: reference length " + std::to_string(reference.size()) +
                          " != window " + std::to_string(params.window));
  std::vector<State> predicted;
  predicted.reserve(params.window);
  // Closed form of k repeated steps; avoids accumulating rounding.
  for (std::size_t k = 1; k <= params.window; ++k) {
    const double t = static_cast<double>(k) * params.dt;
    predicted.push_back({state.x + t * u.vx, state.y + t * u.vy});
  }
  CostBreakdown c;
  c.mse = mse_window(predicted, reference);
  c.mu1 = mu1(u);
  c.mu2 = mu2(u, params.speed_target);
  c.total = c.mse + params.lambda1 * c.mu1 + params.lambda2 * c.mu2;
  return c;
}

} // namespace ticktrack
