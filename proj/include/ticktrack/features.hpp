#pragma once

#include "ticktrack/core.hpp"
#include "ticktrack/trigger.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ticktrack {

/// Relative frequencies of velocity directions over circular bins centered
/// at k * 360/bins degrees.
struct DirectionHistogram
{
  std::vector<double> bin_centers;          // degrees
  std::vector<double> relative_frequencies; // sums to 1 when sample_count > 0
  double bin_width = 45.0;
  std::size_t sample_count = 0;

  friend bool operator==(const DirectionHistogram&, const DirectionHistogram&) = default;
};

/// Gaussian-kernel density estimate tabulated on a uniform grid.
struct Kde1D
{
  std::size_t sample_count = 0;
  double bandwidth = 0.0;
  std::vector<double> grid;
  std::vector<double> densities;

  /// Grid point of maximal density (first one on ties).
  double mode() const;

  friend bool operator==(const Kde1D&, const Kde1D&) = default;
};

struct GaussianFit
{
  double mean = 0.0;
  double std = 0.0; // population (maximum-likelihood) deviation

  friend bool operator==(const GaussianFit&, const GaussianFit&) = default;
};

inline constexpr std::size_t kKdeGridPoints = 512;

/// atan2(vy, vx) in [0, 360) degrees for every sample with l1 speed above
/// `speed_floor`. Uses data coordinates (y grows downward).
std::vector<double> velocity_directions(const Trajectory& traj, double speed_floor = 1e-9);

/// Each angle goes to the nearest bin center; ties go to the smaller center.
DirectionHistogram direction_histogram(std::span<const double> angles, std::size_t bins = 8);

/// |vx| + |vy| of every sample, zero velocities included.
std::vector<double> l1_speed_series(const Trajectory& traj);

/// Silverman's rule of thumb: 0.9 * min(sd, IQR/1.34) * n^(-1/5). Falls back
/// to sd when the IQR is zero. Throws DegenerateDistribution on zero spread.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian KDE on 512 points spanning [min - 3h, max + 3h]. Bandwidth
/// defaults to silverman_bandwidth().
Kde1D kde(std::span<const double> samples, std::optional<double> bandwidth = std::nullopt);

/// Density of the estimate at an arbitrary point.
double kde_density(std::span<const double> samples, double bandwidth, double x);

GaussianFit gaussian_fit(std::span<const double> samples);

/// Steps between consecutive update events.
std::vector<std::size_t> update_intervals(const Trajectory& traj);

/// Interval CDF on {1..20}; longer intervals are discarded. Needs at least
/// two update events.
EmpiricalCdf empirical_interval_cdf(const Trajectory& traj);
EmpiricalCdf empirical_interval_cdf(std::span<const Trajectory> trajs);

/// Per-step squared distance to the reference. The reference may be longer
/// (lookahead padding); it is aligned on step index.
std::vector<double> squared_error_series(const Trajectory& traj, const Trajectory& reference);

/// Fraction of angles within `tolerance` degrees of 45, 135, 225 or 315.
double diagonal_mass(std::span<const double> angles, double tolerance);

double mean(std::span<const double> samples);
double median(std::vector<double> samples);
/// Linear-interpolation quantile (R type 7).
double quantile(std::vector<double> samples, double q);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Largest pointwise difference between two interval CDFs.
double ks_statistic(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// Half the l1 distance between two histograms with the same binning.
double total_variation(const DirectionHistogram& a, const DirectionHistogram& b);

} // namespace ticktrack
