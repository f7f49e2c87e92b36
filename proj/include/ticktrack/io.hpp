#pragma once

#include "ticktrack/core.hpp"
#include "ticktrack/report.hpp"
#include "ticktrack/simulator.hpp"
#include "ticktrack/trigger.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ticktrack {

inline constexpr int kSchemaVersion = 1;

//! I/O failure on a path (missing file, unwritable directory).
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Trajectory plus the header metadata stored alongside it.
///
/// Text layout:
///   # schema=1
///   # dt=0.283
///   # width=1920
///   # height=1080
///   # mode=humanlike        (reference | baseline | humanlike | human)
///   # seed=7                (optional)
///   # columns=n,t,x,y,vx,vy,event
///   0,0,960,540,0,0,1
///   ...
struct TrajectoryFile
{
  Trajectory trajectory;
  DisplayBounds bounds;
  std::string mode = "reference";
  std::optional<std::uint64_t> seed;
};

std::string format_trajectory(const TrajectoryFile& file);
/// Throws ParseError for malformed text, ValidationError for invariant breaks.
TrajectoryFile parse_trajectory(const std::string& text);

void save_trajectory(const TrajectoryFile& file, const std::filesystem::path& path);
void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);
TrajectoryFile load_trajectory_file(const std::filesystem::path& path);
Trajectory load_trajectory(const std::filesystem::path& path);

/// Line 1: K. Then K lines "k F(k)", k ascending from 1.
std::string format_cdf(const EmpiricalCdf& cdf);
EmpiricalCdf parse_cdf(const std::string& text);
void save_cdf(const EmpiricalCdf& cdf, const std::filesystem::path& path);
EmpiricalCdf load_cdf(const std::filesystem::path& path);

/// CSV: step,d_s,pre_vx,pre_vy,post_vx,post_vy,d_t,t_event,feasible
std::string format_event_log(const EventLog& log);
EventLog parse_event_log(const std::string& text);
void save_event_log(const EventLog& log, const std::filesystem::path& path);
EventLog load_event_log(const std::filesystem::path& path);

/// Reference path description. A single waypoint yields a held point.
struct ReferenceSpec
{
  enum class Kind
  {
    waypoints,
    held_point,
  };

  std::vector<State> waypoints;
  std::vector<double> speeds; // one per segment, or a single shared value
  std::size_t steps = 0;
  double dt = 0.283;
  DisplayBounds bounds;

  Kind kind() const { return waypoints.size() == 1 ? Kind::held_point : Kind::waypoints; }
  void validate() const;
};

/// Piecewise-constant-velocity path through the waypoints. Each step moves
/// speed*dt along the current segment; the step that would overshoot a
/// waypoint lands on it instead. After the last waypoint the position is
/// held. Controls are the implied per-step velocities.
Trajectory generate_reference(const ReferenceSpec& spec);

/// `[section]` blocks of key=value lines and optional `columns=` data.
/// Absent features are written as `present=0` with no data.
std::string format_feature_report(const FeatureReport& report);
FeatureReport parse_feature_report(const std::string& text);
void export_feature_report(const FeatureReport& report, const std::filesystem::path& path);
FeatureReport load_feature_report(const std::filesystem::path& path);

std::string format_comparison(const Comparison& cmp);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal text that parses back to exactly `v`. All file formats
/// use it, so every save/load cycle is bit-exact.
std::string format_number(double v);
/// Locale-independent strict parse; throws ParseError on trailing junk.
double parse_number(const std::string& text, std::size_t line);

} // namespace ticktrack
