#include "ticktrack/trigger.hpp"

#include <cmath>
#include <string>

namespace ticktrack {

namespace {

constexpr double kDefaultMeanInterval = 8.0;

std::vector<double> truncated_geometric_pmf(double p, std::size_t support)
{
  std::vector<double> pmf(support);
  double mass = p;
  double z = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    pmf[k] = mass;
    z += mass;
    mass *= 1.0 - p;
  }
  for (double& v : pmf)
    v /= z;
  return pmf;
}

double pmf_mean(const std::vector<double>& pmf)
{
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k)
    m += static_cast<double>(k + 1) * pmf[k];
  return m;
}

} // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> values)
  : values_(std::move(values))
{
  if (values_.empty())
    throw ValidationError("support K >= 1", "empty CDF");
  double prev = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double f = values_[i];
    if (!std::isfinite(f) || f < 0.0 || f > 1.0)
      throw ValidationError("0 <= F(k) <= 1", "F(" + std::to_string(i + 1) + ") = " + std::to_string(f));
    if (f < prev)
      throw ValidationError("F nondecreasing", "F(" + std::to_string(i + 1) + ") < F(" + std::to_string(i) + ")");
    prev = f;
  }
  if (values_.back() != 1.0)
    throw ValidationError("F(K) = 1", "F(" + std::to_string(values_.size()) + ") = " +
                                        std::to_string(values_.back()));
}

double EmpiricalCdf::at(std::size_t k) const
{
  if (k == 0)
    return 0.0;
  if (k >= values_.size())
    return 1.0;
  return values_[k - 1];
}

double EmpiricalCdf::pmf(std::size_t k) const
{
  if (k == 0 || k > values_.size())
    return 0.0;
  return at(k) - at(k - 1);
}

double EmpiricalCdf::mean() const
{
  double m = 0.0;
  for (std::size_t k = 1; k <= values_.size(); ++k)
    m += static_cast<double>(k) * pmf(k);
  return m;
}

bool should_update(const TriggerState& trigger, const EmpiricalCdf& cdf)
{
  return trigger.d_t <= cdf.at(trigger.t_event);
}

std::size_t next_interval(double d_t, const EmpiricalCdf& cdf)
{
  for (std::size_t k = 1; k < cdf.support(); ++k)
    if (cdf.at(k) >= d_t)
      return k;
  return cdf.support();
}

double default_cdf_geometric_p()
{
  // The truncated mean decreases from 10.5 (p -> 0) to 1 (p -> 1).
  const std::size_t K = EmpiricalCdf::kDefaultSupport;
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double m = pmf_mean(truncated_geometric_pmf(mid, K));
    if (std::abs(m - kDefaultMeanInterval) <= 1e-13)
      break;
    if (m > kDefaultMeanInterval)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

EmpiricalCdf default_cdf()
{
  const auto pmf = truncated_geometric_pmf(default_cdf_geometric_p(), EmpiricalCdf::kDefaultSupport);
  std::vector<double> f(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf[k];
    f[k] = std::min(acc, 1.0);
  }
  f.back() = 1.0;
  return EmpiricalCdf(std::move(f));
}

EmpiricalCdf cdf_from_intervals(const std::vector<std::size_t>& intervals, std::size_t support)
{
  if (support < 1)
    throw InvalidArgument("cdf_from_intervals: support must be >= 1");
  std::vector<std::size_t> counts(support, 0);
  std::size_t total = 0;
  for (std::size_t v : intervals) {
    if (v >= 1 && v <= support) {
      ++counts[v - 1];
      ++total;
    }
  }
  if (total == 0)
    throw InvalidArgument("cdf_from_intervals: no intervals inside {1.." + std::to_string(support) + "}");
  std::vector<double> f(support);
  std::size_t acc = 0;
  for (std::size_t k = 0; k < support; ++k) {
    acc += counts[k];
    f[k] = static_cast<double>(acc) / static_cast<double>(total);
  }
  return EmpiricalCdf(std::move(f));
}

} // namespace ticktrack
