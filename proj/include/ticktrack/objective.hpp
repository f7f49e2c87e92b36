#pragma once

#include "ticktrack/core.hpp"

#include <span>

namespace ticktrack {

/// The raw terms of the receding-horizon cost, kept separate so callers can
/// report penalty activity and not just totals.
struct CostBreakdown
{
  double mse = 0.0;  // pixels^2
  double mu1 = 0.0;  // pixels/second
  double mu2 = 0.0;  // (pixels/second)^2
  double total = 0.0;
};

/// Mean squared Euclidean distance between the W predicted future states and
/// the reference. The current state is not part of `predicted`.
double mse_window(std::span<const State> predicted, std::span<const State> reference);

/// Distance from the diagonal directions: | |vx| - |vy| |.
double mu1(const Control& u);

/// Squared deviation of the l1 speed from the target: (|vx| + |vy| - m)^2.
double mu2(const Control& u, double speed_target);

/// Rolls the constant control `u` forward W steps from `state` and returns
/// mse + lambda1*mu1 + lambda2*mu2. Display bounds are not checked here.
CostBreakdown total_cost(const State& state,
                         const Control& u,
                         std::span<const State> reference,
                         const HumanLikeParams& params);

} // namespace ticktrack
