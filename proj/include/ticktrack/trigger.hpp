#pragma once

#include "ticktrack/errors.hpp"

#include <cstddef>
#include <vector>

namespace ticktrack {

/// Discrete CDF of inter-update intervals on the support {1, ..., K} steps.
/// Construction enforces 0 <= F(1) <= ... <= F(K) = 1.
class EmpiricalCdf
{
public:
  static constexpr std::size_t kDefaultSupport = 20;

  explicit EmpiricalCdf(std::vector<double> values);

  std::size_t support() const { return values_.size(); }

  /// F(k) for 1-based k; k beyond the support reads F(K) = 1.
  double at(std::size_t k) const;

  /// Probability mass at k: F(k) - F(k-1).
  double pmf(std::size_t k) const;

  double mean() const;

  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const EmpiricalCdf&, const EmpiricalCdf&) = default;

private:
  std::vector<double> values_;
};

/// Sampled indicator and steps elapsed since the last control update.
struct TriggerState
{
  double d_t = 0.0;
  std::size_t t_event = 1;
};

/// Fires iff d_t <= F(t_event).
bool should_update(const TriggerState& trigger, const EmpiricalCdf& cdf);

/// Smallest k with F(k) >= d_t: the step at which should_update first fires
/// for a given indicator.
std::size_t next_interval(double d_t, const EmpiricalCdf& cdf);

/// Stand-in for the unpublished human interval CDF: a geometric law
/// truncated to {1..20} and renormalized, with its success probability
/// chosen by bisection so that the mean interval is 8 steps.
EmpiricalCdf default_cdf();

/// Success probability used by default_cdf().
double default_cdf_geometric_p();

/// Builds a CDF on {1..K} from interval samples; intervals outside [1, K]
/// are dropped. Throws InvalidArgument if nothing remains.
EmpiricalCdf cdf_from_intervals(const std::vector<std::size_t>& intervals,
                                std::size_t support = EmpiricalCdf::kDefaultSupport);

} // namespace ticktrack
