#include "support.hpp"

#include "ticktrack/io.hpp"
#include "ticktrack/report.hpp"
#include "ticktrack/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

using namespace ticktrack;

namespace {

RunOutput sample_run(std::uint64_t seed, std::size_t steps)
{
  testing::Gen g(seed + 500);
  const Trajectory ref = generate_reference(g.waypoint_spec(4, steps + 8, 40, 120));
  SimConfig cfg;
  cfg.steps = steps;
  cfg.seed = seed;
  cfg.initial_state = ref[0].state;
  return run_humanlike(ref, cfg);
}

void check_close(const Trajectory& a, const Trajectory& b, double tol)
{
  REQUIRE(a.size() == b.size());
  CHECK(a.dt == b.dt);
  for (std::size_t n = 0; n < a.size(); ++n) {
    CHECK(a[n].n == b[n].n);
    CHECK(a[n].event == b[n].event);
    CHECK(std::abs(a[n].state.x - b[n].state.x) <= tol);
    CHECK(std::abs(a[n].state.y - b[n].state.y) <= tol);
    CHECK(std::abs(a[n].control.vx - b[n].control.vx) <= tol);
    CHECK(std::abs(a[n].control.vy - b[n].control.vy) <= tol);
  }
}

template <typename F>
void expect_validation(F&& f, const std::string& invariant_fragment)
{
  try {
    f();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK_MESSAGE(e.invariant().find(invariant_fragment) != std::string::npos, e.invariant());
  }
}

} // namespace

TEST_CASE("numbers round-trip through text exactly")
{
  testing::Gen g(51);
  for (int i = 0; i < 10000; ++i) {
    const double v = g.uniform(-1e4, 1e4) * std::pow(10.0, g.uniform(-12, 6));
    CHECK(parse_number(format_number(v), 1) == v);
  }
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK_THROWS_AS(parse_number("1.5x", 3), ParseError);
  CHECK_THROWS_AS(parse_number("", 3), ParseError);
}

TEST_CASE("trajectory files round-trip")
{
  const RunOutput run = sample_run(1, 1000);
  testing::TempDir dir("io_traj");
  TrajectoryFile f{run.trajectory, {}, "humanlike", 1};
  save_trajectory(f, dir / "t.csv");
  const TrajectoryFile back = load_trajectory_file(dir / "t.csv");
  check_close(back.trajectory, run.trajectory, 1e-12);
  CHECK(back.trajectory == run.trajectory);
  CHECK(back.mode == "humanlike");
  CHECK(back.seed == std::optional<std::uint64_t>{1});
  CHECK(back.bounds == DisplayBounds{});
  CHECK(format_trajectory(back) == format_trajectory(f));

  save_trajectory(run.trajectory, dir / "plain.csv");
  CHECK(load_trajectory(dir / "plain.csv") == run.trajectory);
}

TEST_CASE("trajectory parse errors")
{
  CHECK_THROWS_AS(parse_trajectory(""), ParseError);
  CHECK_THROWS_AS(parse_trajectory("# schema=1\n# dt=0.5\n"), ParseError);

  const std::string header = "# schema=1\n# dt=0.5\n# width=1920\n# height=1080\n# mode=reference\n"
                             "# columns=n,t,x,y,vx,vy,event\n";
  CHECK_NOTHROW(parse_trajectory(header + "0,0,0,0,2,0,1\n1,0.5,1,0,0,0,0\n"));

  expect_validation([&] { parse_trajectory(header + "0,0,0,0,2,0,1\n1,0.7,1,0,0,0,0\n"); }, "t = n*dt");

  try {
    parse_trajectory(header + "0,0,0,0,2,0,1\n1,0.5,1,zero,0,0,0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
  }
  CHECK_THROWS_AS(parse_trajectory(header + "0,0,0,0,2,0,1\n1,0.5,1,0,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse_trajectory(header + "0,0,0,0,2,0,2\n"), ParseError);
  CHECK_THROWS_AS(parse_trajectory("# schema=2\n# dt=0.5\n0,0,0,0,0,0,1\n"), ParseError);

  expect_validation([&] { parse_trajectory(header + "0,0,0,0,2,0,1\n1,0.5,5,0,0,0,0\n"); }, "self-consistency");
  expect_validation([&] { parse_trajectory(header + "0,0,0,0,2,0,0\n1,0.5,1,0,0,0,0\n"); }, "step 0");
}

TEST_CASE("human-mode trajectory files load and feed the feature pipeline")
{
  const std::string text = "# schema=1\n# dt=0.283\n# width=1920\n# height=1080\n# mode=human\n"
                           "# columns=n,t,x,y,vx,vy,event\n"
                           "0,0,100,100,63.75,0,1\n"
                           "1,0.283,118.04125,100,63.75,0,0\n"
                           "2,0.566,136.0825,100,63.75,63.75,1\n"
                           "3,0.849,154.12375,118.04125,63.75,63.75,0\n"
                           "4,1.132,172.165,136.0825,0,63.75,1\n"
                           "5,1.415,172.165,154.12375,0,63.75,0\n";
  testing::TempDir dir("io_human");
  write_text(dir / "h.csv", text);
  const TrajectoryFile f = load_trajectory_file(dir / "h.csv");
  CHECK(f.mode == "human");
  CHECK_FALSE(f.seed.has_value());
  const std::vector<Trajectory> set{f.trajectory};
  const FeatureReport r = build_feature_report(set);
  REQUIRE(r.directions.has_value());
  REQUIRE(r.interval_cdf.has_value());
  CHECK(r.interval_cdf->at(2) == 1.0);
  CHECK(*r.mean_l1_speed == doctest::Approx((63.75 * 4 + 127.5 * 2) / 6));
}

TEST_CASE("CDF files")
{
  testing::TempDir dir("io_cdf");
  save_cdf(default_cdf(), dir / "cdf.txt");
  CHECK(load_cdf(dir / "cdf.txt") == default_cdf());
  CHECK(parse_cdf(format_cdf(EmpiricalCdf({0.25, 1.0}))) == EmpiricalCdf({0.25, 1.0}));

  CHECK_THROWS_AS(parse_cdf("3\n1 0.5\n2 0.4\n3 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_cdf("3\n1 0.5\n2 0.6\n3 0.99\n"), ValidationError);
  CHECK_THROWS_AS(parse_cdf("3\n1 0.5\n3 0.6\n2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_cdf(""), ParseError);
}

TEST_CASE("event logs round-trip")
{
  const RunOutput run = sample_run(2, 300);
  REQUIRE(!run.events.empty());
  CHECK(parse_event_log(format_event_log(run.events)) == run.events);
  CHECK_THROWS_AS(parse_event_log("step,d_s\n0,1\n"), ParseError);
}

TEST_CASE("generate_reference")
{
  ReferenceSpec spec;
  spec.waypoints = {{0, 0}, {100, 0}};
  spec.speeds = {50};
  spec.steps = 12;
  const Trajectory t = generate_reference(spec);
  REQUIRE(t.size() == 12);
  CHECK_NOTHROW(validate_trajectory(t));
  for (std::size_t n = 0; n <= 7; ++n)
    CHECK(t[n].state.x == doctest::Approx(14.15 * static_cast<double>(n)).epsilon(1e-12));
  CHECK(t[8].state.x == 100.0);
  for (std::size_t n = 8; n < 12; ++n) {
    CHECK(t[n].state == State{100, 0});
    CHECK(t[n].state.y == 0.0);
  }
  CHECK(t[7].control.vx == doctest::Approx((100 - 14.15 * 7) / 0.283));
  CHECK(t[8].control == Control{0, 0});

  ReferenceSpec held;
  held.waypoints = {{300, 400}};
  held.speeds = {60};
  held.steps = 10;
  CHECK(held.kind() == ReferenceSpec::Kind::held_point);
  const Trajectory h = generate_reference(held);
  REQUIRE(h.size() == 10);
  for (const auto& s : h.samples)
    CHECK(s.state == State{300, 400});

  ReferenceSpec bad = spec;
  bad.waypoints = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(generate_reference(bad), ValidationError);
  bad = spec;
  bad.waypoints = {{0, 0}, {2000, 0}};
  CHECK_THROWS_AS(generate_reference(bad), ValidationError);
  bad = spec;
  bad.speeds = {0};
  CHECK_THROWS_AS(generate_reference(bad), ValidationError);
}

TEST_CASE("generated references stay on the display")
{
  testing::Gen g(52);
  for (int trial = 0; trial < 50; ++trial) {
    ReferenceSpec spec = g.waypoint_spec(g.index(2, 6), 400, 20, 400);
    // Push some waypoints onto the edges.
    spec.waypoints.front() = {0, g.uniform(0, 1080)};
    spec.waypoints.back() = {1920, 1080};
    const Trajectory t = generate_reference(spec);
    CHECK_NOTHROW(validate_trajectory(t));
    for (const auto& s : t.samples)
      CHECK(spec.bounds.contains(s.state));
  }
}

TEST_CASE("feature reports export deterministically and round-trip")
{
  std::vector<Trajectory> set;
  for (std::uint64_t s = 0; s < 3; ++s)
    set.push_back(sample_run(s, 200).trajectory);
  testing::Gen g(600);
  const Trajectory ref = generate_reference(g.waypoint_spec(4, 208, 40, 120));
  const FeatureReport r = build_feature_report(set, &ref);
  testing::TempDir dir("io_report");
  export_feature_report(r, dir / "a.txt");
  export_feature_report(r, dir / "b.txt");
  CHECK(read_text(dir / "a.txt") == read_text(dir / "b.txt"));
  CHECK(load_feature_report(dir / "a.txt") == r);
  CHECK_THROWS_AS(export_feature_report(r, dir / "missing" / "x.txt"), IoError);
}

TEST_CASE("an empty angle set marks the histogram absent")
{
  Trajectory still;
  still.dt = 0.283;
  for (std::size_t n = 0; n < 5; ++n)
    still.samples.push_back({n, {10, 10}, {0, 0}, n == 0});
  const std::vector<Trajectory> set{still};
  const std::string text = format_feature_report(build_feature_report(set));
  const auto pos = text.find("[directions]");
  REQUIRE(pos != std::string::npos);
  CHECK(text.compare(pos, 23, "[directions]\npresent=0\n") == 0);
  CHECK(text.find("relative_frequency") == std::string::npos);
  CHECK(parse_feature_report(text) == build_feature_report(set));
}

TEST_CASE("golden seed-0 run")
{
  ReferenceSpec spec;
  spec.waypoints = {{200, 200}, {1600, 200}, {1600, 900}, {300, 700}};
  spec.speeds = {80};
  spec.steps = 108;
  const Trajectory ref = generate_reference(spec);
  SimConfig cfg;
  cfg.steps = 100;
  cfg.seed = 0;
  cfg.initial_state = {200, 200};
  const RunOutput run = run_humanlike(ref, cfg);
  const std::vector<Trajectory> set{run.trajectory};
  const std::string report = format_feature_report(build_feature_report(set, &ref));
  const std::string traj = format_trajectory({run.trajectory, {}, "humanlike", 0});

  const std::filesystem::path golden = TICKTRACK_GOLDEN_DIR;
  if (std::getenv("TICKTRACK_UPDATE_GOLDEN")) {
    write_text(golden / "seed0_trajectory.csv", traj);
    write_text(golden / "seed0_features.txt", report);
  }
  CHECK(traj == read_text(golden / "seed0_trajectory.csv"));
  CHECK(report == read_text(golden / "seed0_features.txt"));
}
