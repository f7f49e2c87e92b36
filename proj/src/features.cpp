#include "ticktrack/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ticktrack {

namespace {

double wrap_degrees(double a)
{
  double w = std::fmod(a, 360.0);
  if (w < 0.0)
    w += 360.0;
  if (w >= 360.0)
    w -= 360.0;
  return w;
}

double circular_distance(double a, double b)
{
  const double d = std::abs(wrap_degrees(a) - wrap_degrees(b));
  return std::min(d, 360.0 - d);
}

void require_nonempty(std::span<const double> samples, const char* what)
{
  if (samples.empty())
    throw InvalidArgument(std::string(what) + ": no samples");
}

} // namespace

double Kde1D::mode() const
{
  if (densities.empty())
    throw InvalidArgument("Kde1D::mode: empty estimate");
  const auto it = std::max_element(densities.begin(), densities.end());
  return grid[static_cast<std::size_t>(it - densities.begin())];
}

std::vector<double> velocity_directions(const Trajectory& traj, double speed_floor)
{
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples) {
    if (s.control.l1() <= speed_floor)
      continue;
    out.push_back(wrap_degrees(std::atan2(s.control.vy, s.control.vx) * 180.0 / std::numbers::pi));
  }
  return out;
}

DirectionHistogram direction_histogram(std::span<const double> angles, std::size_t bins)
{
  if (bins < 1 || 360 % bins != 0)
    throw InvalidArgument("direction_histogram: bins must divide 360, got " + std::to_string(bins));
  DirectionHistogram h;
  h.bin_width = 360.0 / static_cast<double>(bins);
  h.bin_centers.resize(bins);
  for (std::size_t k = 0; k < bins; ++k)
    h.bin_centers[k] = static_cast<double>(k) * h.bin_width;
  h.relative_frequencies.assign(bins, 0.0);
  std::vector<std::size_t> counts(bins, 0);
  for (double a : angles) {
    const double pos = wrap_degrees(a) / h.bin_width - 0.5;
    // ceil() sends an exact midpoint to the lower center.
    auto idx = static_cast<long long>(std::ceil(pos));
    idx %= static_cast<long long>(bins);
    ++counts[static_cast<std::size_t>(idx)];
  }
  h.sample_count = angles.size();
  if (h.sample_count > 0)
    for (std::size_t k = 0; k < bins; ++k)
      h.relative_frequencies[k] = static_cast<double>(counts[k]) / static_cast<double>(h.sample_count);
  return h;
}

std::vector<double> l1_speed_series(const Trajectory& traj)
{
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples)
    out.push_back(s.control.l1());
  return out;
}

double mean(std::span<const double> samples)
{
  require_nonempty(samples, "mean");
  double sum = 0.0;
  for (double v : samples)
    sum += v;
  return sum / static_cast<double>(samples.size());
}

double quantile(std::vector<double> samples, double q)
{
  require_nonempty(samples, "quantile");
  std::sort(samples.begin(), samples.end());
  const double h = (static_cast<double>(samples.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

double median(std::vector<double> samples) { return quantile(std::move(samples), 0.5); }

double silverman_bandwidth(std::span<const double> samples)
{
  if (samples.size() < 2)
    throw DegenerateDistribution("automatic bandwidth needs at least 2 samples");
  const double m = mean(samples);
  double ss = 0.0;
  for (double v : samples)
    ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  std::vector<double> copy(samples.begin(), samples.end());
  const double iqr = quantile(copy, 0.75) - quantile(copy, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0))
    throw DegenerateDistribution("samples have zero spread");
  return 0.9 * spread * std::pow(static_cast<double>(samples.size()), -0.2);
}

double kde_density(std::span<const double> samples, double bandwidth, double x)
{
  require_nonempty(samples, "kde_density");
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  double acc = 0.0;
  for (double s : samples) {
    const double z = (x - s) / bandwidth;
    acc += std::exp(-0.5 * z * z);
  }
  return acc * norm;
}

Kde1D kde(std::span<const double> samples, std::optional<double> bandwidth)
{
  require_nonempty(samples, "kde");
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(samples);
  if (!(std::isfinite(h) && h > 0.0))
    throw InvalidArgument("kde: bandwidth must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it - 3.0 * h;
  const double hi = *hi_it + 3.0 * h;

  Kde1D out;
  out.sample_count = samples.size();
  out.bandwidth = h;
  out.grid.resize(kKdeGridPoints);
  out.densities.resize(kKdeGridPoints);
  const double step = (hi - lo) / static_cast<double>(kKdeGridPoints - 1);
  for (std::size_t i = 0; i < kKdeGridPoints; ++i) {
    out.grid[i] = i + 1 == kKdeGridPoints ? hi : lo + static_cast<double>(i) * step;
    out.densities[i] = kde_density(samples, h, out.grid[i]);
  }
  return out;
}

GaussianFit gaussian_fit(std::span<const double> samples)
{
  require_nonempty(samples, "gaussian_fit");
  const double m = mean(samples);
  double ss = 0.0;
  for (double v : samples)
    ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / static_cast<double>(samples.size()))};
}

std::vector<std::size_t> update_intervals(const Trajectory& traj)
{
  std::vector<std::size_t> out;
  bool have = false;
  std::size_t last = 0;
  for (const auto& s : traj.samples) {
    if (!s.event)
      continue;
    if (have)
      out.push_back(s.n - last);
    last = s.n;
    have = true;
  }
  return out;
}

EmpiricalCdf empirical_interval_cdf(const Trajectory& traj)
{
  return empirical_interval_cdf(std::span<const Trajectory>(&traj, 1));
}

EmpiricalCdf empirical_interval_cdf(std::span<const Trajectory> trajs)
{
  std::vector<std::size_t> all;
  for (const auto& t : trajs) {
    const auto iv = update_intervals(t);
    all.insert(all.end(), iv.begin(), iv.end());
  }
  if (all.empty())
    throw InvalidArgument("empirical_interval_cdf: fewer than two update events");
  return cdf_from_intervals(all, EmpiricalCdf::kDefaultSupport);
}

std::vector<double> squared_error_series(const Trajectory& traj, const Trajectory& reference)
{
  if (reference.size() < traj.size())
    throw InvalidArgument("squared_error_series: reference has " + std::to_string(reference.size()) +
                          " samples, trajectory " + std::to_string(traj.size()));
  if (std::abs(reference.dt - traj.dt) > 1e-12)
    throw InvalidArgument("squared_error_series: dt mismatch");
  std::vector<double> out(traj.size());
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const double ex = traj[n].state.x - reference[n].state.x;
    const double ey = traj[n].state.y - reference[n].state.y;
    out[n] = ex * ex + ey * ey;
  }
  return out;
}

double diagonal_mass(std::span<const double> angles, double tolerance)
{
  if (!(tolerance > 0.0 && tolerance <= 22.5))
    throw InvalidArgument("diagonal_mass: tolerance must lie in (0, 22.5]");
  require_nonempty(angles, "diagonal_mass");
  std::size_t hits = 0;
  for (double a : angles) {
    for (double d : {45.0, 135.0, 225.0, 315.0}) {
      if (circular_distance(a, d) <= tolerance) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(angles.size());
}

double ks_statistic(std::vector<double> a, std::vector<double> b)
{
  if (a.empty() || b.empty())
    throw InvalidArgument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x)
      ++i;
    while (j < b.size() && b[j] <= x)
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_statistic(const EmpiricalCdf& a, const EmpiricalCdf& b)
{
  const std::size_t k = std::max(a.support(), b.support());
  double d = 0.0;
  for (std::size_t i = 1; i <= k; ++i)
    d = std::max(d, std::abs(a.at(i) - b.at(i)));
  return d;
}

double total_variation(const DirectionHistogram& a, const DirectionHistogram& b)
{
  if (a.relative_frequencies.size() != b.relative_frequencies.size())
    throw InvalidArgument("total_variation: histograms have different bin counts");
  if (a.sample_count == 0 || b.sample_count == 0)
    return a.sample_count == b.sample_count ? 0.0 : 1.0;
  double s = 0.0;
  for (std::size_t k = 0; k < a.relative_frequencies.size(); ++k)
    s += std::abs(a.relative_frequencies[k] - b.relative_frequencies[k]);
  return 0.5 * s;
}

} // namespace ticktrack
