#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gptlab/serialize.hpp>

namespace gptlab::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::vector<Json> theories;  // theory specs understood by theory_from_json
  int n_min = 3;
  int n_max = 24;
  // gamma-table: the n = 3m series and the disc angle sweep.
  int m_max = 8;
  int disc_steps = 11;
  // incompat-scan: explicit t values, or an even grid on [t_min, t_max].
  std::vector<double> t_values;
  double t_min = 0.0;
  double t_max = 0.0;
  int t_steps = 0;
  bool threshold = true;
  int grid = 64;
  // mur-properties
  std::vector<double> eps{0.1, 0.25, 0.5};
  std::vector<double> lambdas;
  int trials = 100;
  // mixing-sweep
  bool include_disc = true;
  int granularity = 720;

  double tol = 1e-9;
  bool bits = false;
  std::string out;  // empty: stdout
  std::uint64_t seed = 42;
  int jobs = 0;  // 0: hardware concurrency

  // The t grid after expansion.
  std::vector<double> t_grid() const;
  int resolved_jobs() const;
};

// Defaults for the command, overlaid with the keys present in `j`.
RunConfig config_from_json(const std::string& command, const Json& j);
RunConfig load_config(const std::string& command, const std::string& path);
// Grids non-empty, tolerances positive, ranges ordered.
void validate(const RunConfig& c);

// "5" or "3:24"
std::pair<int, int> parse_n_range(const std::string& s);

}  // namespace gptlab::cli
