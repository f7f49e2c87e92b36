#pragma once

#include "ticktrack/features.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ticktrack {

struct ReportOptions
{
  std::size_t bins = 8;
  std::optional<double> bandwidth; // speed KDE; Silverman when unset
  double diagonal_tolerance = 15.0;
};

struct ErrorSummary
{
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;

  friend bool operator==(const ErrorSummary&, const ErrorSummary&) = default;
};

/// Per-step squared tracking error of one trajectory of a set.
struct ErrorSeries
{
  std::size_t trajectory = 0;
  std::vector<double> values;

  friend bool operator==(const ErrorSeries&, const ErrorSeries&) = default;
};

/// Features pooled over a trajectory set. Optional members are absent when
/// the inputs cannot support them (no motion, zero spread, < 2 events, no
/// reference).
struct FeatureReport
{
  std::size_t trajectories = 0;
  std::size_t samples = 0;
  double diagonal_tolerance = 15.0;

  std::optional<DirectionHistogram> directions;
  std::optional<double> diagonal_mass;

  std::optional<double> mean_l1_speed;
  std::optional<Kde1D> speed_kde;
  std::optional<GaussianFit> speed_fit;

  std::optional<EmpiricalCdf> interval_cdf;

  std::optional<ErrorSummary> errors;
  std::optional<Kde1D> error_kde;
  std::vector<ErrorSeries> error_series;

  friend bool operator==(const FeatureReport&, const FeatureReport&) = default;
};

FeatureReport build_feature_report(std::span<const Trajectory> trajs,
                                   const Trajectory* reference = nullptr,
                                   const ReportOptions& options = {});

/// Distances between two trajectory sets.
struct Comparison
{
  FeatureReport a;
  FeatureReport b;
  std::optional<double> speed_ks;
  std::optional<double> interval_ks;
  std::optional<double> direction_tv;
};

Comparison compare_sets(std::span<const Trajectory> a,
                        std::span<const Trajectory> b,
                        const Trajectory* reference = nullptr,
                        const ReportOptions& options = {});

} // namespace ticktrack
