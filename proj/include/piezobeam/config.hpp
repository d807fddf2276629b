#pragma once

#include "piezobeam/integrator.hpp"
#include "piezobeam/model.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace piezobeam {

struct OutputConfig {
  std::string dir = "out";
  int stride = 1;  ///< write every stride-th sample to the CSV
};

// Fully resolved run description. `echo` lists every key with the value
// actually in effect (defaults included), in a fixed order.
struct FullConfig {
  Grid grid = Grid::make(1.0, 128);
  PhysicalParams physics;
  SourceModel source = SourceModel::null_source();
  InitialData initial;
  SimConfig time;
  OutputConfig output;
  std::vector<std::pair<std::string, std::string>> echo;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Sectioned key = value text. Sections: [domain] L, N; [physics] alpha, beta,
// gamma, lambda1, lambda2; [source] kind, a, eta; [initial] v0, v1, p0, p1;
// [time] dt0, cfl, t_end, blowup_threshold, dt_min, sample_stride;
// [output] dir, stride. '#' and ';' start comments. Unknown sections or keys
// and malformed values are errors naming the offending line; every parameter
// has a documented default. Model, initial-data and stepping constraints are
// all checked here, before any stepping.
FullConfig parse_config_text(const std::string& text, const std::string& origin);
FullConfig parse_config(const std::string& path);

// Sweep grid: [sweep] with comma-separated value lists for a, eta, lambda1,
// lambda2. Missing keys keep the base config's single value.
struct SweepGrid {
  std::vector<double> a, eta, lambda1, lambda2;
};

SweepGrid parse_sweep_grid(const std::string& path);

}  // namespace piezobeam
