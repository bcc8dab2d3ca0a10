#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <gptlab/version.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using gptlab::cli::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> n;
  std::optional<double> t_min, t_max, tol;
  std::optional<int> t_steps, jobs, trials, grid, m_max, granularity;
  std::optional<std::uint64_t> seed;
  std::vector<double> eps;
  bool bits = false;
  bool no_threshold = false;
  bool no_disc = false;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("gpt-lab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("GPT_LAB_LOG");
  const std::string level = env ? env : "error";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::warn);
    spdlog::warn("GPT_LAB_LOG='{}' is not one of error, info, debug; using error", level);
    spdlog::set_level(spdlog::level::err);
  }
}

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& about,
                      Overrides& o) {
  CLI::App* sub = app.add_subcommand(name, about);
  sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output path (default: stdout)");
  sub->add_option("--tol", o.tol, "Agreement tolerance");
  sub->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  return sub;
}

void apply(const Overrides& o, RunConfig& c) {
  if (o.out) c.out = *o.out;
  if (o.n) std::tie(c.n_min, c.n_max) = gptlab::cli::parse_n_range(*o.n);
  if (o.t_min || o.t_max || o.t_steps) {
    c.t_values.clear();
    if (o.t_min) c.t_min = *o.t_min;
    if (o.t_max) c.t_max = *o.t_max;
    c.t_steps = o.t_steps.value_or(c.t_steps > 0 ? c.t_steps : 5);
  }
  if (o.tol) c.tol = *o.tol;
  if (o.seed) c.seed = *o.seed;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.trials) c.trials = *o.trials;
  if (o.grid) c.grid = *o.grid;
  if (o.m_max) c.m_max = *o.m_max;
  if (o.granularity) c.granularity = *o.granularity;
  if (!o.eps.empty()) c.eps = o.eps;
  if (o.bits) c.bits = true;
  if (o.no_threshold) c.threshold = false;
  if (o.no_disc) c.include_disc = false;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Generalized probabilistic theory experiments"};
  app.set_version_flag("--version", std::string("gpt-lab ") + gptlab::kVersion);
  app.require_subcommand(1);
  Overrides o;

  CLI::App* gamma = add_command(app, "gamma-table", "Landau-Pollak bounds for polygon pairs", o);
  gamma->add_option("--n", o.n, "Polygon order N or range N_MIN:N_MAX");
  gamma->add_option("--m-max", o.m_max, "Length of the n = 3m series");
  gamma->add_flag("--bits", o.bits, "Report entropies in bits");

  CLI::App* scan = add_command(app, "incompat-scan", "Incompatibility dimension of the qubit MU pair", o);
  scan->add_option("--t-min", o.t_min, "Lower end of the t grid");
  scan->add_option("--t-max", o.t_max, "Upper end of the t grid");
  scan->add_option("--t-steps", o.t_steps, "Points in the t grid");
  scan->add_option("--grid", o.grid, "Chord grid cells per axis");
  scan->add_flag("--no-threshold", o.no_threshold, "Skip the t0 estimate");

  CLI::App* mixing = add_command(app, "mixing-sweep", "Entropy of mixing consistency per polygon", o);
  mixing->add_option("--n", o.n, "Polygon order N or range N_MIN:N_MAX");
  mixing->add_option("--granularity", o.granularity, "Chord directions scanned per state");
  mixing->add_flag("--no-disc", o.no_disc, "Leave out the disc row");
  mixing->add_flag("--bits", o.bits, "Report entropies in bits");

  CLI::App* mur = add_command(app, "mur-properties", "Measurement uncertainty inequalities on random joints", o);
  mur->add_option("--trials", o.trials, "Random joint observables per theory");
  mur->add_option("--seed", o.seed, "Base random seed");
  mur->add_option("--eps", o.eps, "Error-bar eps values for the Werner link")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    cfg = gptlab::cli::load_config(command, o.config_path);
    apply(o, cfg);
    gptlab::cli::validate(cfg);
  } catch (const gptlab::cli::ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }

  gptlab::cli::CommandOutput result;
  try {
    result = gptlab::cli::run_command(cfg);
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", command, e.what());
    return 1;
  }

  if (cfg.out.empty()) {
    std::cout << result.text << std::flush;
    if (!std::cout) return 4;
  } else {
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    f << result.text;
    f.close();
    if (!f) {
      spdlog::error("cannot write '{}'", cfg.out);
      return 4;
    }
    spdlog::info("wrote {}", cfg.out);
  }
  if (result.status != 0) spdlog::error("{}: {}", command, result.failure);
  return result.status;
}
