#include "ticktrack/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace ticktrack {

namespace {

// Rounding in s + ((edge - s)/dt)*dt can land a hair past the edge; such
// overshoots are snapped back so the next velocity box stays defined.
constexpr double kEdgeSnap = 1e-9;

State advance(const State& s, const Control& u, double dt, const DisplayBounds& bounds)
{
  State next = step(s, u, dt);
  if (next.x < 0.0 && next.x >= -kEdgeSnap)
    next.x = 0.0;
  if (next.x > bounds.width && next.x <= bounds.width + kEdgeSnap)
    next.x = bounds.width;
  if (next.y < 0.0 && next.y >= -kEdgeSnap)
    next.y = 0.0;
  if (next.y > bounds.height && next.y <= bounds.height + kEdgeSnap)
    next.y = bounds.height;
  return next;
}

void check_reference(const Trajectory& reference, const SimConfig& config, std::size_t required)
{
  if (reference.size() < required)
    throw InvalidArgument("reference has " + std::to_string(reference.size()) + " samples, " +
                          std::to_string(required) + " required");
  if (std::abs(reference.dt - config.params.dt) > 1e-12)
    throw InvalidArgument("reference dt " + std::to_string(reference.dt) + " != controller dt " +
                          std::to_string(config.params.dt));
}

} // namespace

std::string to_string(Mode m) { return m == Mode::baseline ? "baseline" : "humanlike"; }

Mode parse_mode(const std::string& s)
{
  if (s == "baseline")
    return Mode::baseline;
  if (s == "humanlike")
    return Mode::humanlike;
  throw InvalidArgument("unknown mode '" + s + "' (expected baseline|humanlike)");
}

void SimConfig::validate() const
{
  params.validate();
  if (steps < params.window)
    throw ValidationError("steps N >= window W",
                          "N=" + std::to_string(steps) + ", W=" + std::to_string(params.window));
  if (!params.bounds.contains(initial_state))
    throw ValidationError("initial state in-bounds", "(" + std::to_string(initial_state.x) + ", " +
                                                       std::to_string(initial_state.y) + ")");
}

AxisSet updated_axes(SparsitySwitch d_s)
{
  switch (d_s) {
  case SparsitySwitch::horizontal:
    return {true, false};
  case SparsitySwitch::vertical:
    return {false, true};
  case SparsitySwitch::hold:
    break;
  }
  return {};
}

Control apply_noise(const Control& u, AxisSet axes, double sigma, Rng& rng, const VelocityBox& box)
{
  if (!(sigma >= 0.0))
    throw InvalidArgument("apply_noise: sigma must be >= 0");
  Control out = u;
  if (axes.x)
    out.vx = box.x.clamp(out.vx + sigma * rng.normal());
  if (axes.y)
    out.vy = box.y.clamp(out.vy + sigma * rng.normal());
  return out;
}

Trajectory run_baseline(const Trajectory& reference, const SimConfig& config)
{
  config.validate();
  check_reference(reference, config, config.steps);
  const auto& p = config.params;

  Trajectory out;
  out.dt = p.dt;
  out.samples.reserve(config.steps);
  State s = config.initial_state;
  for (std::size_t n = 0; n < config.steps; ++n) {
    const State& ref_next = reference[std::min(n + 1, reference.size() - 1)].state;
    const Control u = baseline_step(s, ref_next, p.bounds, p.dt);
    out.samples.push_back({n, s, u, true});
    s = advance(s, u, p.dt, p.bounds);
  }
  return out;
}

RunOutput run_humanlike(const Trajectory& reference, const SimConfig& config)
{
  config.validate();
  const auto& p = config.params;
  check_reference(reference, config, config.steps + p.window);

  RunOutput out;
  out.trajectory.dt = p.dt;
  out.trajectory.samples.reserve(config.steps);

  Rng rng(config.seed);
  State s = config.initial_state;
  Control u_old{0.0, 0.0};
  TriggerState trigger;
  std::size_t last_event = 0;
  std::vector<State> window(p.window);

  for (std::size_t n = 0; n < config.steps; ++n) {
    trigger.t_event = n - last_event;
    const bool fire = n == 0 || should_update(trigger, config.cdf);

    Control u = u_old;
    if (fire) {
      trigger.d_t = sample_indicator(rng);
      for (std::size_t k = 0; k < p.window; ++k)
        window[k] = reference[n + 1 + k].state;
      const SolveResult r = humanlike_solve(s, u_old, window, p);
      const VelocityBox box = velocity_box(s, p.bounds, p.window, p.dt);
      u = apply_noise(r.u, updated_axes(r.d_s), p.sigma_eps, rng, box);
      out.events.push_back({n, r.d_s, r.u, u, trigger.d_t, trigger.t_event, r.feasible});
      last_event = n;
    }

    // Display edge acts as a wall for held velocities.
    u = velocity_box(s, p.bounds, 1, p.dt).clamp(u);

    out.trajectory.samples.push_back({n, s, u, fire});
    u_old = update_u_old(u);
    s = advance(s, u, p.dt, p.bounds);
  }
  return out;
}

RunOutput run(const Trajectory& reference, const SimConfig& config)
{
  if (config.mode == Mode::baseline)
    return {run_baseline(reference, config), {}};
  return run_humanlike(reference, config);
}

BatchError::BatchError(std::vector<std::pair<std::size_t, std::string>> failures)
  : std::runtime_error([&] {
      std::string msg = std::to_string(failures.size()) + " run(s) failed:";
      for (const auto& [i, what] : failures)
        msg += "\n  run " + std::to_string(i) + ": " + what;
      return msg;
    }())
  , failures_(std::move(failures))
{
}

std::vector<RunOutput> run_batch(const std::vector<Trajectory>& references,
                                 const std::vector<SimConfig>& configs,
                                 std::size_t max_threads)
{
  if (references.size() != configs.size())
    throw InvalidArgument("run_batch: " + std::to_string(references.size()) + " references vs " +
                          std::to_string(configs.size()) + " configs");
  const std::size_t count = configs.size();
  std::vector<RunOutput> results(count);
  std::vector<std::string> errors(count);
  std::vector<char> failed(count, 0);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = run(references[i], configs[i]);
      } catch (const std::exception& e) {
        failed[i] = 1;
        errors[i] = e.what();
      }
    }
  };

  std::size_t threads = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto& th : pool)
      th.join();
  }

  std::vector<std::pair<std::size_t, std::string>> failures;
  for (std::size_t i = 0; i < count; ++i)
    if (failed[i])
      failures.emplace_back(i, errors[i]);
  if (!failures.empty())
    throw BatchError(std::move(failures));
  return results;
}

} // namespace ticktrack
