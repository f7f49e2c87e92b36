#include "ticktrack/report.hpp"

namespace ticktrack {

FeatureReport build_feature_report(std::span<const Trajectory> trajs,
                                   const Trajectory* reference,
                                   const ReportOptions& options)
{
  FeatureReport r;
  r.trajectories = trajs.size();
  r.diagonal_tolerance = options.diagonal_tolerance;

  std::vector<double> angles;
  std::vector<double> speeds;
  for (const auto& t : trajs) {
    r.samples += t.size();
    const auto a = velocity_directions(t);
    angles.insert(angles.end(), a.begin(), a.end());
    const auto s = l1_speed_series(t);
    speeds.insert(speeds.end(), s.begin(), s.end());
  }

  if (!angles.empty()) {
    r.directions = direction_histogram(angles, options.bins);
    r.diagonal_mass = diagonal_mass(angles, options.diagonal_tolerance);
  }

  if (!speeds.empty()) {
    r.mean_l1_speed = mean(speeds);
    r.speed_fit = gaussian_fit(speeds);
    try {
      r.speed_kde = kde(speeds, options.bandwidth);
    } catch (const DegenerateDistribution&) {
    }
  }

  try {
    r.interval_cdf = empirical_interval_cdf(trajs);
  } catch (const InvalidArgument&) {
  }

  if (reference != nullptr) {
    std::vector<double> pooled;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      auto e = squared_error_series(trajs[i], *reference);
      pooled.insert(pooled.end(), e.begin(), e.end());
      r.error_series.push_back({i, std::move(e)});
    }
    if (!pooled.empty()) {
      r.errors = ErrorSummary{pooled.size(), mean(pooled), median(pooled)};
      try {
        r.error_kde = kde(pooled);
      } catch (const DegenerateDistribution&) {
      }
    }
  }
  return r;
}

Comparison compare_sets(std::span<const Trajectory> a,
                        std::span<const Trajectory> b,
                        const Trajectory* reference,
                        const ReportOptions& options)
{
  Comparison c;
  c.a = build_feature_report(a, reference, options);
  c.b = build_feature_report(b, reference, options);

  std::vector<double> sa;
  std::vector<double> sb;
  for (const auto& t : a) {
    const auto s = l1_speed_series(t);
    sa.insert(sa.end(), s.begin(), s.end());
  }
  for (const auto& t : b) {
    const auto s = l1_speed_series(t);
    sb.insert(sb.end(), s.begin(), s.end());
  }
  if (!sa.empty() && !sb.empty())
    c.speed_ks = ks_statistic(sa, sb);
  if (c.a.interval_cdf && c.b.interval_cdf)
    c.interval_ks = ks_statistic(*c.a.interval_cdf, *c.b.interval_cdf);
  if (c.a.directions && c.b.directions)
    c.direction_tv = total_variation(*c.a.directions, *c.b.directions);
  return c;
}

} // namespace ticktrack
