#pragma once

#include "ticktrack/core.hpp"
#include "ticktrack/random.hpp"
#include "ticktrack/solver.hpp"
#include "ticktrack/trigger.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ticktrack {

enum class Mode
{
  baseline,
  humanlike,
};

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct SimConfig
{
  std::size_t steps = 500; // N
  std::uint64_t seed = 0;
  HumanLikeParams params;
  State initial_state;
  Mode mode = Mode::humanlike;
  EmpiricalCdf cdf = default_cdf();

  void validate() const;
};

/// One control update of the human-like agent.
struct EventRecord
{
  std::size_t step = 0;
  SparsitySwitch d_s = SparsitySwitch::hold;
  Control pre_noise;
  Control post_noise;
  double d_t = 0.0;        // indicator drawn at this event; governs the next interval
  std::size_t t_event = 0; // steps since the previous event (0 at step 0)
  bool feasible = true;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

using EventLog = std::vector<EventRecord>;

struct RunOutput
{
  Trajectory trajectory;
  EventLog events; // empty for baseline runs
};

/// Axes the solver was allowed to change for a given switch value.
struct AxisSet
{
  bool x = false;
  bool y = false;
};

AxisSet updated_axes(SparsitySwitch d_s);

/// Adds N(0, sigma^2) to each axis in `axes` (x first), then clamps the
/// result to `box`. Consumes two draws per noisy axis.
Control apply_noise(const Control& u, AxisSet axes, double sigma, Rng& rng, const VelocityBox& box);

/// Closed loop with the penalty-free tracker. Consumes no randomness.
Trajectory run_baseline(const Trajectory& reference, const SimConfig& config);

/// Closed loop with event trigger, sparse solver and actuation noise.
///
/// Per step n: at n = 0, or when the trigger fires, draw a fresh d_t, solve
/// on reference samples n+1..n+W, perturb the updated component and reset
/// the interval counter; otherwise hold u_old. A held control that would
/// carry the pointer past a display edge on this step is clamped at the edge.
RunOutput run_humanlike(const Trajectory& reference, const SimConfig& config);

/// Dispatches on config.mode.
RunOutput run(const Trajectory& reference, const SimConfig& config);

/// Independent runs, results in input order. Runs execute concurrently;
/// failures are collected and rethrown as one BatchError.
std::vector<RunOutput> run_batch(const std::vector<Trajectory>& references,
                                 const std::vector<SimConfig>& configs,
                                 std::size_t max_threads = 0);

class BatchError : public std::runtime_error
{
public:
  BatchError(std::vector<std::pair<std::size_t, std::string>> failures);

  const std::vector<std::pair<std::size_t, std::string>>& failures() const { return failures_; }

private:
  std::vector<std::pair<std::size_t, std::string>> failures_;
};

} // namespace ticktrack
