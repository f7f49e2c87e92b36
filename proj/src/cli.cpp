#include "ticktrack/cli.hpp"

#include "ticktrack/io.hpp"
#include "ticktrack/report.hpp"
#include "ticktrack/simulator.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace ticktrack::cli {

namespace fs = std::filesystem;

namespace {

//! Bad flag values or combinations detected after CLI11 parsing.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

State parse_point(const std::string& text)
{
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw UsageError("expected a point 'x,y', got '" + text + "'");
  try {
    return {parse_number(text.substr(0, comma), 0), parse_number(text.substr(comma + 1), 0)};
  } catch (const ticktrack::ParseError&) {
    throw UsageError("expected a point 'x,y', got '" + text + "'");
  }
}

std::vector<State> parse_waypoints(const std::string& text)
{
  std::vector<State> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ':'))
    out.push_back(parse_point(cur));
  if (out.empty())
    throw UsageError("--waypoints needs at least one 'x,y'");
  return out;
}

std::vector<double> parse_number_list(const std::string& text, const char* flag)
{
  std::vector<double> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    try {
      out.push_back(parse_number(cur, 0));
    } catch (const ticktrack::ParseError&) {
      throw UsageError(std::string(flag) + ": bad number '" + cur + "'");
    }
  }
  if (out.empty())
    throw UsageError(std::string(flag) + " is empty");
  return out;
}

std::uint64_t parse_seed(const std::string& text)
{
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw UsageError("bad seed '" + text + "'");
  return v;
}

/// "0..19" (inclusive) or "3,5,8".
std::vector<std::uint64_t> parse_seeds(const std::string& text)
{
  std::vector<std::uint64_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_seed(text.substr(0, dots));
    const auto hi = parse_seed(text.substr(dots + 2));
    if (hi < lo)
      throw UsageError("--seeds range is empty: '" + text + "'");
    for (auto s = lo; s <= hi; ++s)
      out.push_back(s);
    return out;
  }
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ','))
    out.push_back(parse_seed(cur));
  if (out.empty())
    throw UsageError("--seeds is empty");
  return out;
}

fs::path with_suffix(const fs::path& p, const std::string& suffix)
{
  return p.parent_path() / (p.stem().string() + suffix + p.extension().string());
}

fs::path manifest_path(const fs::path& out) { return fs::path(out.string() + ".manifest"); }

fs::path events_path(const fs::path& out)
{
  return out.parent_path() / (out.stem().string() + ".events.csv");
}

class Manifest
{
public:
  Manifest(std::string command, const std::vector<std::string>& args)
  {
    os_ << "# ticktrack run manifest\n";
    put("command", command);
    put("version", kVersion);
    for (const auto& a : args)
      put("arg", a);
  }

  void put(const std::string& key, const std::string& value) { os_ << key << '=' << value << '\n'; }
  void put(const std::string& key, double value) { put(key, format_number(value)); }
  void put(const std::string& key, std::uint64_t value) { put(key, std::to_string(value)); }

  void save(const fs::path& path) const { write_text(path, os_.str()); }

private:
  std::ostringstream os_;
};

// ---------------------------------------------------------------------------

struct GenRefOptions
{
  std::string waypoints;
  std::string speed = "63.75";
  std::size_t steps = 0;
  double dt = 0.283;
  double width = 1920.0;
  double height = 1080.0;
  std::string out;
};

int cmd_gen_ref(const GenRefOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
  ReferenceSpec spec;
  spec.waypoints = parse_waypoints(o.waypoints);
  spec.speeds = parse_number_list(o.speed, "--speed");
  spec.steps = o.steps;
  spec.dt = o.dt;
  spec.bounds = {o.width, o.height};
  const Trajectory ref = generate_reference(spec);
  save_trajectory(TrajectoryFile{ref, spec.bounds, "reference", std::nullopt}, o.out);

  Manifest m("gen-ref", args);
  m.put("waypoints", o.waypoints);
  m.put("speed", o.speed);
  m.put("steps", static_cast<std::uint64_t>(o.steps));
  m.put("dt", o.dt);
  m.put("width", o.width);
  m.put("height", o.height);
  m.put("output", o.out);
  m.save(manifest_path(o.out));
  out << "wrote " << o.out << " (" << ref.size() << " samples)\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct SimulateOptions
{
  std::string mode;
  std::string ref;
  std::string seed = "0";
  std::optional<std::string> seeds;
  std::optional<std::size_t> batch;
  std::optional<std::string> init;
  std::optional<std::size_t> steps;
  HumanLikeParams params;
  std::optional<std::string> cdf;
  std::string out;
  std::optional<std::string> events;
  std::size_t threads = 0;
};

int cmd_simulate(const SimulateOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
  const Mode mode = parse_mode(o.mode);
  const TrajectoryFile ref = load_trajectory_file(o.ref);

  SimConfig base;
  base.mode = mode;
  base.params = o.params;
  base.params.dt = ref.trajectory.dt;
  base.params.bounds = ref.bounds;
  if (o.cdf)
    base.cdf = load_cdf(*o.cdf);
  base.initial_state = o.init ? parse_point(*o.init) : ref.trajectory[0].state;
  if (o.steps) {
    base.steps = *o.steps;
  } else {
    if (ref.trajectory.size() <= base.params.window)
      throw ValidationError("reference longer than window", "reference has " +
                                                              std::to_string(ref.trajectory.size()) + " samples");
    base.steps = ref.trajectory.size() - base.params.window;
  }

  std::vector<std::uint64_t> seeds;
  if (o.seeds) {
    seeds = parse_seeds(*o.seeds);
    if (o.batch && *o.batch != seeds.size())
      throw UsageError("--batch " + std::to_string(*o.batch) + " does not match " +
                       std::to_string(seeds.size()) + " seeds");
  } else if (o.batch) {
    if (*o.batch == 0)
      throw UsageError("--batch must be >= 1");
    const auto first = parse_seed(o.seed);
    for (std::size_t i = 0; i < *o.batch; ++i)
      seeds.push_back(first + i);
  } else {
    seeds.push_back(parse_seed(o.seed));
  }
  const bool batch = o.batch.has_value() || o.seeds.has_value();
  if (batch && o.events)
    throw UsageError("--events cannot be combined with --batch/--seeds");

  std::vector<Trajectory> refs(seeds.size(), ref.trajectory);
  std::vector<SimConfig> configs(seeds.size(), base);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    configs[i].seed = seeds[i];
  const auto results = run_batch(refs, configs, o.threads);

  Manifest m("simulate", args);
  m.put("mode", to_string(mode));
  m.put("reference", o.ref);
  m.put("steps", static_cast<std::uint64_t>(base.steps));
  m.put("init", format_number(base.initial_state.x) + "," + format_number(base.initial_state.y));
  m.put("lambda1", base.params.lambda1);
  m.put("lambda2", base.params.lambda2);
  m.put("sigma", base.params.sigma_eps);
  m.put("window", static_cast<std::uint64_t>(base.params.window));
  m.put("speed_target", base.params.speed_target);
  m.put("dt", base.params.dt);
  m.put("width", base.params.bounds.width);
  m.put("height", base.params.bounds.height);
  m.put("cdf", o.cdf ? *o.cdf : std::string("default"));
  {
    std::string f;
    for (std::size_t k = 1; k <= base.cdf.support(); ++k)
      f += (k > 1 ? "," : "") + format_number(base.cdf.at(k));
    m.put("cdf_values", f);
  }

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const fs::path traj_path = batch ? with_suffix(o.out, "_seed" + std::to_string(seeds[i])) : fs::path(o.out);
    save_trajectory(TrajectoryFile{results[i].trajectory, base.params.bounds, to_string(mode), seeds[i]},
                    traj_path);
    m.put("seed", seeds[i]);
    m.put("output", traj_path.string());
    if (mode == Mode::humanlike) {
      const fs::path ev = o.events ? fs::path(*o.events) : events_path(traj_path);
      save_event_log(results[i].events, ev);
      m.put("events", ev.string());
    }
  }
  m.save(manifest_path(o.out));
  out << "wrote " << seeds.size() << " " << to_string(mode) << " trajectory file(s)\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct FeaturesOptions
{
  std::vector<std::string> trajs;
  std::optional<std::string> ref;
  std::size_t bins = 8;
  std::optional<double> bandwidth;
  double tolerance = 15.0;
  std::string out;
};

std::vector<Trajectory> load_all(const std::vector<std::string>& paths)
{
  std::vector<Trajectory> out;
  for (const auto& p : paths)
    out.push_back(load_trajectory(p));
  return out;
}

ReportOptions report_options(std::size_t bins, std::optional<double> bandwidth, double tolerance)
{
  ReportOptions r;
  r.bins = bins;
  r.bandwidth = bandwidth;
  r.diagonal_tolerance = tolerance;
  return r;
}

void echo_report_options(Manifest& m, const ReportOptions& r)
{
  m.put("bins", static_cast<std::uint64_t>(r.bins));
  m.put("bandwidth", r.bandwidth ? format_number(*r.bandwidth) : std::string("silverman"));
  m.put("tolerance", r.diagonal_tolerance);
}

int cmd_features(const FeaturesOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
  const auto trajs = load_all(o.trajs);
  std::optional<Trajectory> ref;
  if (o.ref)
    ref = load_trajectory(*o.ref);
  const ReportOptions ro = report_options(o.bins, o.bandwidth, o.tolerance);
  const FeatureReport report = build_feature_report(trajs, ref ? &*ref : nullptr, ro);
  export_feature_report(report, o.out);

  Manifest m("features", args);
  for (const auto& t : o.trajs)
    m.put("input", t);
  m.put("reference", o.ref ? *o.ref : std::string("none"));
  echo_report_options(m, ro);
  m.put("output", o.out);
  m.save(manifest_path(o.out));

  out << "trajectories=" << report.trajectories << " samples=" << report.samples;
  if (report.diagonal_mass)
    out << " diagonal_mass=" << format_number(*report.diagonal_mass);
  if (report.mean_l1_speed)
    out << " mean_l1_speed=" << format_number(*report.mean_l1_speed);
  if (report.errors)
    out << " mean_squared_error=" << format_number(report.errors->mean);
  out << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct CompareOptions
{
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::string ref;
  std::size_t bins = 8;
  std::optional<double> bandwidth;
  double tolerance = 15.0;
  std::string out;
};

int cmd_compare(const CompareOptions& o, const std::vector<std::string>& args, std::ostream& out)
{
  const auto a = load_all(o.a);
  const auto b = load_all(o.b);
  const Trajectory ref = load_trajectory(o.ref);
  const ReportOptions ro = report_options(o.bins, o.bandwidth, o.tolerance);
  const Comparison cmp = compare_sets(a, b, &ref, ro);
  write_text(o.out, format_comparison(cmp));

  Manifest m("compare", args);
  for (const auto& t : o.a)
    m.put("input_a", t);
  for (const auto& t : o.b)
    m.put("input_b", t);
  m.put("reference", o.ref);
  echo_report_options(m, ro);
  m.put("output", o.out);
  m.save(manifest_path(o.out));

  auto show = [&](const char* k, const std::optional<double>& v) {
    out << ' ' << k << '=' << (v ? format_number(*v) : std::string("absent"));
  };
  out << "compare:";
  show("speed_ks", cmp.speed_ks);
  show("interval_ks", cmp.interval_ks);
  show("direction_tv", cmp.direction_tv);
  out << '\n';
  return kOk;
}

int cmd_replay(const std::string& manifest, std::ostream& out, std::ostream& err)
{
  const std::string text = read_text(manifest);
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> args;
  while (std::getline(is, line)) {
    if (line.rfind("arg=", 0) == 0)
      args.push_back(line.substr(4));
  }
  if (args.empty())
    throw ValidationError("manifest lists the original arguments", "no 'arg=' lines in " + manifest);
  if (args.front() == "replay")
    throw UsageError("refusing to replay a replay manifest");
  return run(args, out, err);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Human-like receding-horizon pointer tracking", "ticktrack"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenRefOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-ref", "Generate a waypoint reference trajectory");
  gen_cmd->add_option("--waypoints", gen.waypoints, "x1,y1:x2,y2:...")->required();
  gen_cmd->add_option("--speed", gen.speed, "Segment speed(s) in px/s, comma separated")
    ->capture_default_str();
  gen_cmd->add_option("--steps", gen.steps, "Number of samples")->required();
  gen_cmd->add_option("--dt", gen.dt, "Sampling interval (s)")->capture_default_str();
  gen_cmd->add_option("--width", gen.width)->capture_default_str();
  gen_cmd->add_option("--height", gen.height)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output trajectory file")->required();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the baseline or human-like controller");
  sim_cmd->add_option("--mode", sim.mode, "baseline|humanlike")
    ->required()
    ->check(CLI::IsMember({"baseline", "humanlike"}));
  sim_cmd->add_option("--ref", sim.ref, "Reference trajectory file")->required();
  sim_cmd->add_option("--seed", sim.seed, "Seed (first seed of a --batch)")->capture_default_str();
  sim_cmd->add_option("--seeds", sim.seeds, "Explicit seeds: 'a..b' or 'a,b,c'");
  sim_cmd->add_option("--batch", sim.batch, "Number of runs");
  sim_cmd->add_option("--init", sim.init, "Initial position x,y (default: reference start)");
  sim_cmd->add_option("--steps", sim.steps, "Decision steps N (default: reference length - W)");
  sim_cmd->add_option("--lambda1", sim.params.lambda1)->capture_default_str();
  sim_cmd->add_option("--lambda2", sim.params.lambda2)->capture_default_str();
  sim_cmd->add_option("--sigma", sim.params.sigma_eps)->capture_default_str();
  sim_cmd->add_option("--window", sim.params.window)->capture_default_str();
  sim_cmd->add_option("--speed-target", sim.params.speed_target)->capture_default_str();
  sim_cmd->add_option("--cdf", sim.cdf, "Interval CDF file (default: built-in stand-in)");
  sim_cmd->add_option("--out", sim.out, "Output trajectory file (batch: suffixed per seed)")->required();
  sim_cmd->add_option("--events", sim.events, "Event log path (humanlike, single run)");
  sim_cmd->add_option("--threads", sim.threads, "Batch worker threads (0 = hardware)");

  FeaturesOptions feat;
  auto* feat_cmd = app.add_subcommand("features", "Pooled feature report for trajectory files");
  feat_cmd->add_option("--traj", feat.trajs, "Trajectory files")->required()->expected(1, -1);
  feat_cmd->add_option("--ref", feat.ref, "Reference (enables error series)");
  feat_cmd->add_option("--bins", feat.bins)->capture_default_str();
  feat_cmd->add_option("--bandwidth", feat.bandwidth, "Speed KDE bandwidth (default Silverman)");
  feat_cmd->add_option("--tolerance", feat.tolerance, "Diagonal tolerance (deg)")->capture_default_str();
  feat_cmd->add_option("--out", feat.out, "Report file")->required();

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare two trajectory sets");
  cmp_cmd->add_option("--a", cmp.a)->required()->expected(1, -1);
  cmp_cmd->add_option("--b", cmp.b)->required()->expected(1, -1);
  cmp_cmd->add_option("--ref", cmp.ref)->required();
  cmp_cmd->add_option("--bins", cmp.bins)->capture_default_str();
  cmp_cmd->add_option("--bandwidth", cmp.bandwidth);
  cmp_cmd->add_option("--tolerance", cmp.tolerance)->capture_default_str();
  cmp_cmd->add_option("--out", cmp.out)->required();

  std::string cdf_out;
  auto* cdf_cmd = app.add_subcommand("cdf", "Write the built-in interval CDF");
  cdf_cmd->add_option("--out", cdf_out)->required();

  std::string manifest;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("--manifest", manifest)->required();

  std::vector<std::string> argv_store{"ticktrack"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store)
    argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return kUsage;
  }

  try {
    if (gen_cmd->parsed())
      return cmd_gen_ref(gen, args, out);
    if (sim_cmd->parsed())
      return cmd_simulate(sim, args, out);
    if (feat_cmd->parsed())
      return cmd_features(feat, args, out);
    if (cmp_cmd->parsed())
      return cmd_compare(cmp, args, out);
    if (cdf_cmd->parsed()) {
      save_cdf(default_cdf(), cdf_out);
      Manifest m("cdf", args);
      m.put("output", cdf_out);
      m.save(manifest_path(cdf_out));
      out << "wrote " << cdf_out << '\n';
      return kOk;
    }
    if (replay_cmd->parsed())
      return cmd_replay(manifest, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error [" << e.invariant() << "]: " << e.what() << '\n';
    return kFailure;
  } catch (const BatchError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

} // namespace ticktrack::cli
