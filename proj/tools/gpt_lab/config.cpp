#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

namespace gptlab::cli {

namespace {

const std::vector<std::string> kKnownKeys{
    "command", "theories", "n_min",  "n_max",       "m_max",       "disc_steps",
    "t_values", "t_min",   "t_max",  "t_steps",     "threshold",   "grid",
    "eps",      "lambdas", "trials", "include_disc", "granularity", "tol",
    "bits",     "out",     "seed",   "jobs"};

template <typename T>
void take(const Json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

std::vector<double> RunConfig::t_grid() const {
  if (!t_values.empty()) return t_values;
  std::vector<double> g;
  if (t_steps == 1) return {t_min};
  for (int k = 0; k < t_steps; ++k)
    g.push_back(t_min + (t_max - t_min) * static_cast<double>(k) / (t_steps - 1));
  return g;
}

int RunConfig::resolved_jobs() const {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig config_from_json(const std::string& command, const Json& j) {
  RunConfig c;
  c.command = command;
  if (command == "incompat-scan") c.t_values = {0.7121, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0};
  if (command == "mur-properties") {
    c.theories = {Json{{"kind", "polygon"}, {"n", 5}}, Json{{"kind", "polygon"}, {"n", 12}},
                  Json{{"kind", "disc"}}, Json{{"kind", "simplex"}, {"n", 3}}};
    c.lambdas = {0.0, 0.5, 1.0 / std::sqrt(2.0)};
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw ConfigError("config: unknown key '" + key + "'");
  }
  if (j.contains("command") && j.at("command").get<std::string>() != command)
    throw ConfigError("config: written for '" + j.at("command").get<std::string>() +
                      "', not '" + command + "'");
  try {
    if (j.contains("theories")) c.theories = j.at("theories").get<std::vector<Json>>();
    take(j, "n_min", c.n_min);
    take(j, "n_max", c.n_max);
    take(j, "m_max", c.m_max);
    take(j, "disc_steps", c.disc_steps);
    take(j, "t_values", c.t_values);
    if (j.contains("t_min") || j.contains("t_max") || j.contains("t_steps")) c.t_values.clear();
    take(j, "t_min", c.t_min);
    take(j, "t_max", c.t_max);
    take(j, "t_steps", c.t_steps);
    take(j, "threshold", c.threshold);
    take(j, "grid", c.grid);
    take(j, "eps", c.eps);
    take(j, "lambdas", c.lambdas);
    take(j, "trials", c.trials);
    take(j, "include_disc", c.include_disc);
    take(j, "granularity", c.granularity);
    take(j, "tol", c.tol);
    take(j, "bits", c.bits);
    take(j, "out", c.out);
    take(j, "seed", c.seed);
    take(j, "jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& command, const std::string& path) {
  if (path.empty()) return config_from_json(command, Json::object());
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return config_from_json(command, j);
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("config: " + msg);
  };
  require(c.tol > 0.0 && std::isfinite(c.tol), "tol must be positive");
  require(c.jobs >= 0, "jobs must be non-negative");
  if (c.command == "gamma-table") {
    require(c.n_min >= 3 && c.n_min <= c.n_max, "n range must satisfy 3 <= n_min <= n_max");
    require(c.m_max >= 0, "m_max must be non-negative");
    require(c.disc_steps >= 0, "disc_steps must be non-negative");
  } else if (c.command == "incompat-scan") {
    if (c.t_values.empty()) {
      require(c.t_steps >= 1, "t grid is empty");
      require(c.t_min <= c.t_max, "t_min exceeds t_max");
    }
    const double q = 1.0 / std::sqrt(2.0);
    for (double t : c.t_grid()) require(t > q && t <= 1.0, "t values must lie in (1/sqrt(2), 1]");
    require(c.grid >= 2, "grid must be at least 2");
  } else if (c.command == "mixing-sweep") {
    require(c.n_min >= 3 && c.n_min <= c.n_max, "n range must satisfy 3 <= n_min <= n_max");
    require(c.granularity >= 1, "granularity must be positive");
  } else if (c.command == "mur-properties") {
    require(!c.theories.empty(), "theory list is empty");
    require(c.trials >= 1, "trials must be positive");
    require(!c.eps.empty(), "eps list is empty");
    for (double e : c.eps) require(e > 0.0 && e <= 1.0, "eps values must lie in (0, 1]");
    for (double l : c.lambdas)
      require(l >= 0.0 && l <= 1.0 / std::sqrt(2.0) + 1e-15, "lambdas must lie in [0, 1/sqrt(2)]");
  }
}

std::pair<int, int> parse_n_range(const std::string& s) {
  try {
    const auto colon = s.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const int n = std::stoi(s, &used);
      if (used != s.size()) throw ConfigError("bad --n");
      return {n, n};
    }
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw ConfigError("bad --n");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw ConfigError("bad --n");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("--n expects N or N_MIN:N_MAX, got '" + s + "'");
  }
}

}  // namespace gptlab::cli
