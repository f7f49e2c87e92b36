#pragma once

// Test-only oracle for the human-like solver. Shares nothing with the
// solver beyond the public data types: cost terms and the velocity box are
// recomputed here from their definitions.

#include "ticktrack/solver.hpp"

#include <span>

namespace ticktrack::oracle {

/// Cost of holding `u` for W steps, computed from the closed form
/// s_k = s + k*u*dt rather than by iterating the transition.
double reference_cost(const State& state,
                      const Control& u,
                      std::span<const State> reference,
                      const HumanLikeParams& params);

/// Exhaustive grid search over the free component of each sparsity branch.
/// The grid spans the velocity box at `grid_resolution` px/s; the box ends
/// and the kinks at 0 and +-|frozen component| are injected.
SolveResult brute_force_solve(const State& state,
                              const Control& u_old,
                              std::span<const State> reference,
                              const HumanLikeParams& params,
                              double grid_resolution);

} // namespace ticktrack::oracle
