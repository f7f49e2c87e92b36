#include "ticktrack/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ticktrack {

namespace {

std::vector<std::string> split_lines(const std::string& text)
{
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r')
        cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r')
      cur.pop_back();
    lines.push_back(std::move(cur));
  }
  return lines;
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool blank(const std::string& s) { return trim(s).empty(); }

std::uint64_t parse_unsigned(const std::string& text, std::size_t line)
{
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc{} || ptr != end)
    throw ParseError(line, "expected a non-negative integer, got '" + text + "'");
  return v;
}

std::pair<std::string, std::string> key_value(const std::string& s, std::size_t line)
{
  const auto eq = s.find('=');
  if (eq == std::string::npos)
    throw ParseError(line, "expected key=value, got '" + s + "'");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

// ---------------------------------------------------------------------------
// Sectioned report text
// ---------------------------------------------------------------------------

struct Section
{
  std::string name;
  std::size_t line = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> values;
  std::vector<std::string> columns;
  std::vector<std::pair<std::vector<double>, std::size_t>> rows;

  bool has(const std::string& key) const { return values.count(key) != 0; }

  const std::string& raw(const std::string& key) const
  {
    const auto it = values.find(key);
    if (it == values.end())
      throw ParseError(line, "section [" + name + "] lacks key '" + key + "'");
    return it->second.first;
  }

  std::size_t line_of(const std::string& key) const { return values.at(key).second; }
  double number(const std::string& key) const { return parse_number(raw(key), line_of(key)); }
  std::size_t count(const std::string& key) const
  {
    return static_cast<std::size_t>(parse_unsigned(raw(key), line_of(key)));
  }
  bool present() const { return raw("present") == "1"; }

  void expect_columns(std::size_t n) const
  {
    if (columns.size() != n)
      throw ParseError(line, "section [" + name + "] expects " + std::to_string(n) + " columns");
  }
};

std::vector<Section> parse_sections(const std::string& text)
{
  std::vector<Section> sections;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string l = trim(lines[i]);
    if (l.empty() || l[0] == '#')
      continue;
    if (l.front() == '[') {
      if (l.back() != ']')
        throw ParseError(ln, "unterminated section header");
      sections.push_back({l.substr(1, l.size() - 2), ln, {}, {}, {}});
      continue;
    }
    if (sections.empty())
      throw ParseError(ln, "content before the first [section]");
    Section& s = sections.back();
    if (!s.columns.empty()) {
      const auto fields = split(l, ',');
      if (fields.size() != s.columns.size())
        throw ParseError(ln, "expected " + std::to_string(s.columns.size()) + " fields");
      std::vector<double> row;
      row.reserve(fields.size());
      for (const auto& f : fields)
        row.push_back(parse_number(f, ln));
      s.rows.emplace_back(std::move(row), ln);
      continue;
    }
    auto [k, v] = key_value(l, ln);
    if (k == "columns") {
      s.columns = split(v, ',');
      continue;
    }
    s.values[k] = {v, ln};
  }
  if (sections.empty())
    throw ParseError(1, "no sections found");
  return sections;
}

const Section& find_section(const std::vector<Section>& sections, const std::string& name)
{
  for (const auto& s : sections)
    if (s.name == name)
      return s;
  throw ParseError(1, "missing section [" + name + "]");
}

void put(std::ostringstream& os, const std::string& key, double v)
{
  os << key << '=' << format_number(v) << '\n';
}

void put(std::ostringstream& os, const std::string& key, std::size_t v)
{
  os << key << '=' << v << '\n';
}

void write_kde(std::ostringstream& os, const std::string& name, const std::optional<Kde1D>& k)
{
  os << '[' << name << "]\n";
  if (!k) {
    os << "present=0\n";
    return;
  }
  os << "present=1\n";
  put(os, "sample_count", k->sample_count);
  put(os, "bandwidth", k->bandwidth);
  os << "columns=x,density\n";
  for (std::size_t i = 0; i < k->grid.size(); ++i)
    os << format_number(k->grid[i]) << ',' << format_number(k->densities[i]) << '\n';
}

std::optional<Kde1D> read_kde(const Section& s)
{
  if (!s.present())
    return std::nullopt;
  Kde1D k;
  k.sample_count = s.count("sample_count");
  k.bandwidth = s.number("bandwidth");
  s.expect_columns(2);
  for (const auto& [row, ln] : s.rows) {
    k.grid.push_back(row[0]);
    k.densities.push_back(row[1]);
  }
  return k;
}

void write_report_sections(std::ostringstream& os, const FeatureReport& r, const std::string& prefix)
{
  os << '[' << prefix << "summary]\n";
  put(os, "trajectories", r.trajectories);
  put(os, "samples", r.samples);
  put(os, "diagonal_tolerance", r.diagonal_tolerance);

  os << '[' << prefix << "directions]\n";
  if (r.directions) {
    os << "present=1\n";
    put(os, "sample_count", r.directions->sample_count);
    put(os, "bin_width", r.directions->bin_width);
    put(os, "diagonal_mass", *r.diagonal_mass);
    os << "columns=center,frequency\n";
    for (std::size_t k = 0; k < r.directions->bin_centers.size(); ++k)
      os << format_number(r.directions->bin_centers[k]) << ','
         << format_number(r.directions->relative_frequencies[k]) << '\n';
  } else {
    os << "present=0\n";
  }

  os << '[' << prefix << "speed]\n";
  if (r.mean_l1_speed) {
    os << "present=1\n";
    put(os, "mean_l1", *r.mean_l1_speed);
    put(os, "fit_mean", r.speed_fit->mean);
    put(os, "fit_std", r.speed_fit->std);
  } else {
    os << "present=0\n";
  }

  write_kde(os, prefix + "speed_kde", r.speed_kde);

  os << '[' << prefix << "interval_cdf]\n";
  if (r.interval_cdf) {
    os << "present=1\n";
    put(os, "support", r.interval_cdf->support());
    put(os, "mean", r.interval_cdf->mean());
    os << "columns=k,F\n";
    for (std::size_t k = 1; k <= r.interval_cdf->support(); ++k)
      os << k << ',' << format_number(r.interval_cdf->at(k)) << '\n';
  } else {
    os << "present=0\n";
  }

  os << '[' << prefix << "errors]\n";
  if (r.errors) {
    os << "present=1\n";
    put(os, "count", r.errors->count);
    put(os, "mean", r.errors->mean);
    put(os, "median", r.errors->median);
  } else {
    os << "present=0\n";
  }

  write_kde(os, prefix + "error_kde", r.error_kde);

  os << '[' << prefix << "error_series]\n";
  if (r.errors) {
    os << "present=1\n";
    os << "columns=trajectory,n,squared_error\n";
    for (const auto& es : r.error_series)
      for (std::size_t n = 0; n < es.values.size(); ++n)
        os << es.trajectory << ',' << n << ',' << format_number(es.values[n]) << '\n';
  } else {
    os << "present=0\n";
  }
}

std::size_t as_index(double v, std::size_t line)
{
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15)
    throw ParseError(line, "expected an integer index");
  return static_cast<std::size_t>(v);
}

} // namespace

// ---------------------------------------------------------------------------
// Numbers and files
// ---------------------------------------------------------------------------

std::string format_number(double v)
{
  if (v == 0.0)
    v = 0.0; // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{})
    throw InvalidArgument("format_number: conversion failed");
  return std::string(buf, ptr);
}

double parse_number(const std::string& text, std::size_t line)
{
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc{} || ptr != last)
    throw ParseError(line, "expected a number, got '" + text + "'");
  if (!std::isfinite(v))
    throw ParseError(line, "non-finite number '" + text + "'");
  return v;
}

std::string read_text(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out)
    throw IoError("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

std::string format_trajectory(const TrajectoryFile& file)
{
  validate_trajectory(file.trajectory);
  const Trajectory& t = file.trajectory;
  std::ostringstream os;
  os << "# schema=" << kSchemaVersion << '\n';
  os << "# dt=" << format_number(t.dt) << '\n';
  os << "# width=" << format_number(file.bounds.width) << '\n';
  os << "# height=" << format_number(file.bounds.height) << '\n';
  os << "# mode=" << file.mode << '\n';
  if (file.seed)
    os << "# seed=" << *file.seed << '\n';
  os << "# columns=n,t,x,y,vx,vy,event\n";
  for (const auto& s : t.samples) {
    os << s.n << ',' << format_number(static_cast<double>(s.n) * t.dt) << ','
       << format_number(s.state.x) << ',' << format_number(s.state.y) << ','
       << format_number(s.control.vx) << ',' << format_number(s.control.vy) << ','
       << (s.event ? 1 : 0) << '\n';
  }
  return os.str();
}

TrajectoryFile parse_trajectory(const std::string& text)
{
  const auto lines = split_lines(text);
  TrajectoryFile file;
  bool have_schema = false;
  bool have_dt = false;
  bool in_rows = false;
  std::vector<double> times;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string& raw = lines[i];
    if (blank(raw))
      continue;
    if (raw[0] == '#') {
      if (in_rows)
        throw ParseError(ln, "header line after data rows");
      const std::string body = trim(raw.substr(1));
      if (body.empty())
        continue;
      auto [k, v] = key_value(body, ln);
      if (k == "schema") {
        if (parse_unsigned(v, ln) != static_cast<std::uint64_t>(kSchemaVersion))
          throw ParseError(ln, "unsupported schema version " + v);
        have_schema = true;
      } else if (k == "dt") {
        file.trajectory.dt = parse_number(v, ln);
        have_dt = true;
      } else if (k == "width") {
        file.bounds.width = parse_number(v, ln);
      } else if (k == "height") {
        file.bounds.height = parse_number(v, ln);
      } else if (k == "mode") {
        file.mode = v;
      } else if (k == "seed") {
        file.seed = parse_unsigned(v, ln);
      }
      // Other header keys (columns, comments) carry no data.
      continue;
    }
    if (!have_schema)
      throw ParseError(ln, "missing '# schema=' header before data");
    if (!have_dt)
      throw ParseError(ln, "missing '# dt=' header before data");
    in_rows = true;
    const auto f = split(raw, ',');
    if (f.size() != 7)
      throw ParseError(ln, "expected 7 fields n,t,x,y,vx,vy,event; got " + std::to_string(f.size()));
    Sample s;
    s.n = static_cast<std::size_t>(parse_unsigned(f[0], ln));
    times.push_back(parse_number(f[1], ln));
    s.state = {parse_number(f[2], ln), parse_number(f[3], ln)};
    s.control = {parse_number(f[4], ln), parse_number(f[5], ln)};
    const std::string ev = trim(f[6]);
    if (ev != "0" && ev != "1")
      throw ParseError(ln, "event must be 0 or 1, got '" + f[6] + "'");
    s.event = ev == "1";
    file.trajectory.samples.push_back(s);
  }

  if (lines.empty() || (!have_schema && file.trajectory.samples.empty()))
    throw ParseError(1, "empty trajectory file");
  if (file.trajectory.samples.empty())
    throw ParseError(lines.size(), "no data rows");

  file.bounds.validate();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = static_cast<double>(file.trajectory.samples[i].n) * file.trajectory.dt;
    if (std::abs(times[i] - expected) > 1e-9)
      throw ValidationError("t = n*dt", "row " + std::to_string(i) + " has t=" + format_number(times[i]) +
                                          ", expected " + format_number(expected));
  }
  validate_trajectory(file.trajectory);
  return file;
}

void save_trajectory(const TrajectoryFile& file, const std::filesystem::path& path)
{
  write_text(path, format_trajectory(file));
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path)
{
  save_trajectory(TrajectoryFile{traj, {}, "reference", std::nullopt}, path);
}

TrajectoryFile load_trajectory_file(const std::filesystem::path& path)
{
  return parse_trajectory(read_text(path));
}

Trajectory load_trajectory(const std::filesystem::path& path)
{
  return load_trajectory_file(path).trajectory;
}

// ---------------------------------------------------------------------------
// CDF
// ---------------------------------------------------------------------------

std::string format_cdf(const EmpiricalCdf& cdf)
{
  std::ostringstream os;
  os << cdf.support() << '\n';
  for (std::size_t k = 1; k <= cdf.support(); ++k)
    os << k << ' ' << format_number(cdf.at(k)) << '\n';
  return os.str();
}

EmpiricalCdf parse_cdf(const std::string& text)
{
  const auto all = split_lines(text);
  std::vector<std::pair<std::string, std::size_t>> lines;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!blank(all[i]))
      lines.emplace_back(trim(all[i]), i + 1);
  if (lines.empty())
    throw ParseError(1, "empty CDF file");

  const std::size_t K = static_cast<std::size_t>(parse_unsigned(lines[0].first, lines[0].second));
  if (K < 1)
    throw ValidationError("support K >= 1", "line " + std::to_string(lines[0].second) + ": K=0");
  if (lines.size() != K + 1)
    throw ParseError(lines.back().second, "expected " + std::to_string(K) + " value lines, found " +
                                            std::to_string(lines.size() - 1));
  std::vector<double> values;
  double prev = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const auto& [l, ln] = lines[k];
    std::istringstream fields(l);
    std::string ks;
    std::string fs;
    std::string extra;
    fields >> ks >> fs;
    if (fs.empty() || (fields >> extra))
      throw ParseError(ln, "expected 'k F(k)'");
    if (parse_unsigned(ks, ln) != k)
      throw ParseError(ln, "expected k=" + std::to_string(k) + " (ascending from 1)");
    const double f = parse_number(fs, ln);
    if (f < 0.0 || f > 1.0)
      throw ValidationError("0 <= F(k) <= 1", "line " + std::to_string(ln) + ": F=" + fs);
    if (f < prev)
      throw ValidationError("F nondecreasing", "line " + std::to_string(ln) + ": F(" +
                                                 std::to_string(k) + ") < F(" + std::to_string(k - 1) + ")");
    if (k == K && f != 1.0)
      throw ValidationError("F(K) = 1", "line " + std::to_string(ln) + ": F(" + std::to_string(K) +
                                          ")=" + fs);
    values.push_back(f);
    prev = f;
  }
  return EmpiricalCdf(std::move(values));
}

void save_cdf(const EmpiricalCdf& cdf, const std::filesystem::path& path)
{
  write_text(path, format_cdf(cdf));
}

EmpiricalCdf load_cdf(const std::filesystem::path& path) { return parse_cdf(read_text(path)); }

// ---------------------------------------------------------------------------
// Event log
// ---------------------------------------------------------------------------

std::string format_event_log(const EventLog& log)
{
  std::ostringstream os;
  os << "step,d_s,pre_vx,pre_vy,post_vx,post_vy,d_t,t_event,feasible\n";
  for (const auto& e : log) {
    os << e.step << ',' << to_int(e.d_s) << ',' << format_number(e.pre_noise.vx) << ','
       << format_number(e.pre_noise.vy) << ',' << format_number(e.post_noise.vx) << ','
       << format_number(e.post_noise.vy) << ',' << format_number(e.d_t) << ',' << e.t_event << ','
       << (e.feasible ? 1 : 0) << '\n';
  }
  return os.str();
}

EventLog parse_event_log(const std::string& text)
{
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]).rfind("step,", 0) != 0)
    throw ParseError(1, "missing event log header");
  EventLog log;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    if (blank(lines[i]))
      continue;
    const auto f = split(lines[i], ',');
    if (f.size() != 9)
      throw ParseError(ln, "expected 9 fields");
    EventRecord e;
    e.step = static_cast<std::size_t>(parse_unsigned(f[0], ln));
    const std::string ds = trim(f[1]);
    if (ds == "-1")
      e.d_s = SparsitySwitch::vertical;
    else if (ds == "0")
      e.d_s = SparsitySwitch::hold;
    else if (ds == "1")
      e.d_s = SparsitySwitch::horizontal;
    else
      throw ParseError(ln, "d_s must be -1, 0 or 1");
    e.pre_noise = {parse_number(f[2], ln), parse_number(f[3], ln)};
    e.post_noise = {parse_number(f[4], ln), parse_number(f[5], ln)};
    e.d_t = parse_number(f[6], ln);
    e.t_event = static_cast<std::size_t>(parse_unsigned(f[7], ln));
    e.feasible = parse_unsigned(f[8], ln) != 0;
    if (!log.empty() && e.step <= log.back().step)
      throw ValidationError("event steps strictly increasing", "line " + std::to_string(ln));
    if (log.empty() && e.step != 0)
      throw ValidationError("first event at step 0", "line " + std::to_string(ln));
    log.push_back(e);
  }
  return log;
}

void save_event_log(const EventLog& log, const std::filesystem::path& path)
{
  write_text(path, format_event_log(log));
}

EventLog load_event_log(const std::filesystem::path& path) { return parse_event_log(read_text(path)); }

// ---------------------------------------------------------------------------
// Reference generation
// ---------------------------------------------------------------------------

void ReferenceSpec::validate() const
{
  bounds.validate();
  if (waypoints.empty())
    throw ValidationError("at least one waypoint", "none given");
  if (steps < 1)
    throw ValidationError("steps >= 1", "got 0");
  if (!(std::isfinite(dt) && dt > 0.0))
    throw ValidationError("dt > 0", "got " + format_number(dt));
  for (std::size_t i = 0; i < waypoints.size(); ++i)
    if (!(std::isfinite(waypoints[i].x) && std::isfinite(waypoints[i].y)) || !bounds.contains(waypoints[i]))
      throw ValidationError("waypoints in-bounds", "waypoint " + std::to_string(i) + " (" +
                                                     format_number(waypoints[i].x) + ", " +
                                                     format_number(waypoints[i].y) + ")");
  const std::size_t segments = waypoints.size() - 1;
  if (segments > 0) {
    if (speeds.size() != 1 && speeds.size() != segments)
      throw ValidationError("one speed per segment", std::to_string(speeds.size()) + " speeds for " +
                                                       std::to_string(segments) + " segments");
    for (double v : speeds)
      if (!(std::isfinite(v) && v > 0.0))
        throw ValidationError("speeds > 0", "got " + format_number(v));
    for (std::size_t i = 0; i < segments; ++i)
      if (waypoints[i] == waypoints[i + 1])
        throw ValidationError("nonzero segment length", "waypoints " + std::to_string(i) + " and " +
                                                          std::to_string(i + 1) + " coincide");
  }
}

Trajectory generate_reference(const ReferenceSpec& spec)
{
  spec.validate();
  const std::size_t segments = spec.waypoints.size() - 1;

  // positions[0..steps]; the extra point defines the last sample's velocity.
  std::vector<State> positions;
  positions.reserve(spec.steps + 1);
  positions.push_back(spec.waypoints.front());
  std::size_t seg = 0;
  double travelled = 0.0;
  for (std::size_t n = 1; n <= spec.steps; ++n) {
    if (seg >= segments) {
      positions.push_back(positions.back());
      continue;
    }
    const State& a = spec.waypoints[seg];
    const State& b = spec.waypoints[seg + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double speed = spec.speeds.size() == 1 ? spec.speeds[0] : spec.speeds[seg];
    travelled += speed * spec.dt;
    if (travelled >= len) {
      positions.push_back(b);
      ++seg;
      travelled = 0.0;
    } else {
      const double f = travelled / len;
      State p{a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
      p.x = std::clamp(p.x, 0.0, spec.bounds.width);
      p.y = std::clamp(p.y, 0.0, spec.bounds.height);
      positions.push_back(p);
    }
  }

  Trajectory t;
  t.dt = spec.dt;
  t.samples.reserve(spec.steps);
  for (std::size_t n = 0; n < spec.steps; ++n) {
    const Control u{(positions[n + 1].x - positions[n].x) / spec.dt,
                    (positions[n + 1].y - positions[n].y) / spec.dt};
    const bool changed = n == 0 || !(u == t.samples.back().control);
    t.samples.push_back({n, positions[n], u, changed});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Feature reports
// ---------------------------------------------------------------------------

std::string format_feature_report(const FeatureReport& report)
{
  std::ostringstream os;
  os << "# ticktrack feature report\n";
  os << "# schema=" << kSchemaVersion << '\n';
  write_report_sections(os, report, "");
  return os.str();
}

FeatureReport parse_feature_report(const std::string& text)
{
  const auto sections = parse_sections(text);
  FeatureReport r;

  const Section& summary = find_section(sections, "summary");
  r.trajectories = summary.count("trajectories");
  r.samples = summary.count("samples");
  r.diagonal_tolerance = summary.number("diagonal_tolerance");

  const Section& dir = find_section(sections, "directions");
  if (dir.present()) {
    DirectionHistogram h;
    h.sample_count = dir.count("sample_count");
    h.bin_width = dir.number("bin_width");
    dir.expect_columns(2);
    for (const auto& [row, ln] : dir.rows) {
      h.bin_centers.push_back(row[0]);
      h.relative_frequencies.push_back(row[1]);
    }
    r.directions = std::move(h);
    r.diagonal_mass = dir.number("diagonal_mass");
  }

  const Section& speed = find_section(sections, "speed");
  if (speed.present()) {
    r.mean_l1_speed = speed.number("mean_l1");
    r.speed_fit = GaussianFit{speed.number("fit_mean"), speed.number("fit_std")};
  }
  r.speed_kde = read_kde(find_section(sections, "speed_kde"));

  const Section& cdf = find_section(sections, "interval_cdf");
  if (cdf.present()) {
    cdf.expect_columns(2);
    std::vector<double> f;
    for (const auto& [row, ln] : cdf.rows) {
      if (as_index(row[0], ln) != f.size() + 1)
        throw ParseError(ln, "interval_cdf rows must run k = 1..K");
      f.push_back(row[1]);
    }
    r.interval_cdf = EmpiricalCdf(std::move(f));
  }

  const Section& err = find_section(sections, "errors");
  if (err.present())
    r.errors = ErrorSummary{err.count("count"), err.number("mean"), err.number("median")};
  r.error_kde = read_kde(find_section(sections, "error_kde"));

  const Section& series = find_section(sections, "error_series");
  if (series.present()) {
    series.expect_columns(3);
    for (const auto& [row, ln] : series.rows) {
      const std::size_t traj = as_index(row[0], ln);
      const std::size_t n = as_index(row[1], ln);
      if (r.error_series.empty() || r.error_series.back().trajectory != traj)
        r.error_series.push_back({traj, {}});
      if (n != r.error_series.back().values.size())
        throw ParseError(ln, "error_series steps must be consecutive from 0");
      r.error_series.back().values.push_back(row[2]);
    }
  }
  return r;
}

void export_feature_report(const FeatureReport& report, const std::filesystem::path& path)
{
  write_text(path, format_feature_report(report));
}

FeatureReport load_feature_report(const std::filesystem::path& path)
{
  return parse_feature_report(read_text(path));
}

std::string format_comparison(const Comparison& cmp)
{
  std::ostringstream os;
  os << "# ticktrack comparison report\n";
  os << "# schema=" << kSchemaVersion << '\n';
  os << "[distances]\n";
  auto opt = [&](const char* key, const std::optional<double>& v) {
    os << key << '=' << (v ? format_number(*v) : std::string("absent")) << '\n';
  };
  opt("speed_ks", cmp.speed_ks);
  opt("interval_ks", cmp.interval_ks);
  opt("direction_tv", cmp.direction_tv);
  opt("a_mean_squared_error", cmp.a.errors ? std::optional<double>(cmp.a.errors->mean) : std::nullopt);
  opt("b_mean_squared_error", cmp.b.errors ? std::optional<double>(cmp.b.errors->mean) : std::nullopt);
  opt("a_median_squared_error", cmp.a.errors ? std::optional<double>(cmp.a.errors->median) : std::nullopt);
  opt("b_median_squared_error", cmp.b.errors ? std::optional<double>(cmp.b.errors->median) : std::nullopt);
  write_report_sections(os, cmp.a, "a.");
  write_report_sections(os, cmp.b, "b.");
  return os.str();
}

} // namespace ticktrack
