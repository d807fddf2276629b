#include "piezobeam/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "piezobeam/report.hpp"

namespace piezobeam {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    fail(origin, line, "value for '" + key + "' is not a number: '" + value + "'");
  return x;
}

int parse_int(const std::string& origin, int line, const std::string& key,
              const std::string& value) {
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size())
    fail(origin, line, "value for '" + key + "' is not an integer: '" + value + "'");
  return static_cast<int>(x);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Field load_field_file(const std::string& origin, int line, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(origin, line, "cannot open field file '" + path + "'");
  std::vector<double> vals;
  double x;
  while (in >> x) vals.push_back(x);
  if (!in.eof()) fail(origin, line, "malformed number in field file '" + path + "'");
  Field f(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t j = 0; j < vals.size(); ++j) f(static_cast<Eigen::Index>(j)) = vals[j];
  return f;
}

FieldSpec parse_field_spec(const std::string& origin, int line, const std::string& key,
                           const std::string& value) {
  const std::vector<std::string> tok = split_ws(value);
  if (tok.empty()) fail(origin, line, "empty value for '" + key + "'");
  if (tok[0] == "zero") {
    if (tok.size() != 1) fail(origin, line, "'zero' takes no arguments");
    return FieldSpec::zero();
  }
  if (tok[0] == "sine") {
    if (tok.size() < 2 || tok.size() > 3)
      fail(origin, line, "'sine' needs an amplitude and an optional mode index");
    const double amp = parse_double(origin, line, key, tok[1]);
    int mode = 1;
    if (tok.size() == 3) {
      mode = parse_int(origin, line, key, tok[2]);
      if (mode < 1) fail(origin, line, "sine mode index must be >= 1");
    }
    return FieldSpec::sine(amp, mode);
  }
  if (tok[0] == "file") {
    const std::string path = trim(value.substr(value.find("file") + 4));
    if (path.empty()) fail(origin, line, "'file' needs a path");
    return FieldSpec::raw(load_field_file(origin, line, path));
  }
  fail(origin, line,
       "initial field '" + key + "' must be 'zero', 'sine AMP [MODE]' or 'file PATH'");
}

}  // namespace

FullConfig parse_config_text(const std::string& text, const std::string& origin) {
  double L = 1.0;
  int N = 128;
  PhysicalParams ph;
  std::string source_kind = "null";
  double src_a = 0.0;
  double src_eta = 4.0;
  InitialData init;
  SimConfig time;
  OutputConfig output;

  std::istringstream lines(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "domain" && section != "physics" && section != "source" &&
          section != "initial" && section != "time" && section != "output" &&
          section != "sweep")
        fail(origin, lineno, "unknown section '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "missing key before '='");
    if (value.empty()) fail(origin, lineno, "empty value for '" + key + "'");
    if (section.empty()) fail(origin, lineno, "key '" + key + "' outside any section");
    if (section == "sweep") continue;  // sweep grids own those keys; a run config ignores them
    if (!seen.insert(section + "." + key).second)
      fail(origin, lineno, "duplicate key '" + key + "' in [" + section + "]");

    if (section == "domain") {
      if (key == "L")
        L = parse_double(origin, lineno, key, value);
      else if (key == "N")
        N = parse_int(origin, lineno, key, value);
      else
        fail(origin, lineno, "unknown key '" + key + "' in [domain]");
    } else if (section == "physics") {
      if (key == "alpha")
        ph.alpha = parse_double(origin, lineno, key, value);
      else if (key == "beta")
        ph.beta = parse_double(origin, lineno, key, value);
      else if (key == "gamma")
        ph.gamma = parse_double(origin, lineno, key, value);
      else if (key == "lambda1")
        ph.lambda1 = parse_double(origin, lineno, key, value);
      else if (key == "lambda2")
        ph.lambda2 = parse_double(origin, lineno, key, value);
      else
        fail(origin, lineno, "unknown key '" + key + "' in [physics]");
    } else if (section == "source") {
      if (key == "kind") {
        if (value != "null" && value != "power_difference")
          fail(origin, lineno, "unknown source kind '" + value + "'");
        source_kind = value;
      } else if (key == "a")
        src_a = parse_double(origin, lineno, key, value);
      else if (key == "eta")
        src_eta = parse_double(origin, lineno, key, value);
      else
        fail(origin, lineno, "unknown key '" + key + "' in [source]");
    } else if (section == "initial") {
      if (key == "v0")
        init.v0 = parse_field_spec(origin, lineno, key, value);
      else if (key == "v1")
        init.v1 = parse_field_spec(origin, lineno, key, value);
      else if (key == "p0")
        init.p0 = parse_field_spec(origin, lineno, key, value);
      else if (key == "p1")
        init.p1 = parse_field_spec(origin, lineno, key, value);
      else
        fail(origin, lineno, "unknown key '" + key + "' in [initial]");
    } else if (section == "time") {
      if (key == "dt0")
        time.dt0 = parse_double(origin, lineno, key, value);
      else if (key == "cfl")
        time.cfl = parse_double(origin, lineno, key, value);
      else if (key == "t_end")
        time.t_end = parse_double(origin, lineno, key, value);
      else if (key == "blowup_threshold")
        time.blowup_threshold = parse_double(origin, lineno, key, value);
      else if (key == "dt_min")
        time.dt_min = parse_double(origin, lineno, key, value);
      else if (key == "sample_stride")
        time.sample_stride = parse_int(origin, lineno, key, value);
      else
        fail(origin, lineno, "unknown key '" + key + "' in [time]");
    } else {  // output
      if (key == "dir")
        output.dir = value;
      else if (key == "stride") {
        output.stride = parse_int(origin, lineno, key, value);
        if (output.stride < 1) fail(origin, lineno, "output stride must be >= 1");
      } else
        fail(origin, lineno, "unknown key '" + key + "' in [output]");
    }
  }

  FullConfig cfg;
  try {
    cfg.grid = Grid::make(L, N);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  cfg.physics = ph;
  cfg.source = source_kind == "null" ? SourceModel::null_source(src_eta)
                                     : SourceModel::power_difference(src_a, src_eta);
  cfg.initial = init;
  cfg.time = time;
  cfg.output = output;

  const Validation model_check = validate_params(cfg.physics, cfg.source);
  if (!model_check.ok()) throw ConfigError(origin + ": " + model_check.joined());
  const Validation init_check = validate_initial(cfg.grid, cfg.initial);
  if (!init_check.ok()) throw ConfigError(origin + ": " + init_check.joined());
  const Validation sim_check = validate_sim(cfg.time);
  if (!sim_check.ok()) throw ConfigError(origin + ": " + sim_check.joined());

  auto put = [&cfg](const std::string& k, const std::string& v) {
    cfg.echo.emplace_back(k, v);
  };
  put("domain.L", format_number(cfg.grid.length));
  put("domain.N", std::to_string(cfg.grid.cells));
  put("physics.alpha", format_number(cfg.physics.alpha));
  put("physics.beta", format_number(cfg.physics.beta));
  put("physics.gamma", format_number(cfg.physics.gamma));
  put("physics.lambda1", format_number(cfg.physics.lambda1));
  put("physics.lambda2", format_number(cfg.physics.lambda2));
  put("source.kind", cfg.source.kind == SourceKind::Null ? "null" : "power_difference");
  put("source.a", format_number(cfg.source.a));
  put("source.eta", format_number(cfg.source.eta));
  put("initial.v0", cfg.initial.v0.describe());
  put("initial.v1", cfg.initial.v1.describe());
  put("initial.p0", cfg.initial.p0.describe());
  put("initial.p1", cfg.initial.p1.describe());
  put("time.dt0", format_number(cfg.time.dt0));
  put("time.cfl", format_number(cfg.time.cfl));
  put("time.t_end", format_number(cfg.time.t_end));
  put("time.blowup_threshold", format_number(cfg.time.blowup_threshold));
  put("time.dt_min", format_number(cfg.time.dt_min));
  put("time.sample_stride", std::to_string(cfg.time.sample_stride));
  put("output.dir", cfg.output.dir);
  put("output.stride", std::to_string(cfg.output.stride));
  return cfg;
}

FullConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

SweepGrid parse_sweep_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep file '" + path + "'");
  SweepGrid sg;
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(path, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    if (section != "sweep") continue;  // a sweep grid may share a file with a config
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(path, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      fail(path, lineno, "duplicate key '" + key + "' in [sweep]");
    std::vector<double>* list = nullptr;
    if (key == "a")
      list = &sg.a;
    else if (key == "eta")
      list = &sg.eta;
    else if (key == "lambda1")
      list = &sg.lambda1;
    else if (key == "lambda2")
      list = &sg.lambda2;
    else
      fail(path, lineno, "unknown key '" + key + "' in [sweep]");
    std::stringstream items(value);
    std::string item;
    while (std::getline(items, item, ','))
      list->push_back(parse_double(path, lineno, key, trim(item)));
    if (list->empty()) fail(path, lineno, "empty list for '" + key + "'");
  }
  return sg;
}

}  // namespace piezobeam
