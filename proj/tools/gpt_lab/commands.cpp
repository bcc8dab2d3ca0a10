#include "commands.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <gptlab/gptlab.hpp>
#include <gptlab/version.hpp>

#include "parallel.hpp"

namespace gptlab::cli {

namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.15g}", x);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) line += ',';
    line += csv_field(fields[k]);
  }
  return line + "\n";
}

double entropy_unit(const RunConfig& c) { return c.bits ? std::log(2.0) : 1.0; }

std::string unit_line(const RunConfig& c) {
  return std::string("# entropy unit: ") + (c.bits ? "bits" : "nats") + "\n";
}

Json json_config(const RunConfig& c) {
  Json j{{"tol", c.tol}, {"seed", c.seed}, {"bits", c.bits}};
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::pair<Observable, Observable> default_pair(const TheoryPtr& t) {
  if (t->kind() == TheoryKind::Disc) return {disc_binary(t, 0.0), disc_binary(t, kPi / 2.0)};
  return {binary_ideal(t, 1), binary_ideal(t, 0)};
}

JointObservable diagonal_joint(const Observable& f) {
  const std::size_t k = f.size();
  std::vector<Vec> cells(k * k, Vec(f.theory->dim(), 0.0));
  for (std::size_t a = 0; a < k; ++a) cells[a * k + a] = f[a];
  return make_joint(f.theory, k, k, std::move(cells));
}

}  // namespace

std::string header_line(const std::string& command) {
  return fmt::format("# gpt-lab v{} {}\n", kVersion, command);
}

CommandOutput run_gamma_table(const RunConfig& c) {
  struct Job {
    std::string series;
    int n = 0, i = 0;
    double theta = 0.0;
  };
  std::vector<Job> jobs;
  for (int n = c.n_min; n <= c.n_max; ++n)
    for (int i = 1; 2 * i < n; ++i) jobs.push_back({"table", n, i, 0.0});
  for (int m = 1; m <= c.m_max; ++m) jobs.push_back({"3m", 3 * m, m, 0.0});
  for (int k = 1; k <= c.disc_steps; ++k)
    jobs.push_back({"disc", 0, 0, kPi * k / (c.disc_steps + 1)});

  spdlog::info("gamma-table: {} rows on {} threads", jobs.size(), c.resolved_jobs());
  const auto rows = parallel_map<GammaResult>(jobs.size(), c.resolved_jobs(), [&](std::size_t k) {
    const Job& j = jobs[k];
    return j.n == 0 ? landau_pollak_gamma_disc(j.theta) : landau_pollak_gamma(j.n, j.i);
  });

  CommandOutput out;
  out.text = header_line("gamma-table") + unit_line(c);
  out.text += csv_row({"series", "n", "i", "theta", "gamma_numeric", "gamma_closed_form",
                       "entropic_bound"});
  const double unit = entropy_unit(c);
  double worst = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const GammaResult& g = rows[k];
    worst = std::max(worst, std::abs(g.numeric - g.closed_form));
    out.text += csv_row({jobs[k].series, g.n == 0 ? "inf" : std::to_string(g.n),
                         g.n == 0 ? "" : std::to_string(g.i), num(g.theta), num(g.numeric),
                         num(g.closed_form), num(entropic_pur_bound(g.numeric) / unit)});
  }
  if (c.m_max > 0) {
    const double lim = gamma_limit_2pi3();
    out.text += csv_row({"3m", "inf", "", num(2.0 * kPi / 3.0), num(lim), num(lim),
                         num(entropic_pur_bound(lim) / unit)});
  }
  if (worst > c.tol) {
    out.status = kExitCheckFailed;
    out.failure = fmt::format("numeric and closed-form gamma differ by {:.3g} > tol {:.3g}", worst,
                              c.tol);
  }
  return out;
}

CommandOutput run_incompat_scan(const RunConfig& c) {
  const TheoryPtr disc = make_disc();
  DimensionOptions opt;
  opt.grid = c.grid;
  opt.jobs = c.resolved_jobs();
  Json rows = Json::array();
  int disagreements = 0;
  for (double t : c.t_grid()) {
    spdlog::info("incompat-scan: t = {}", num(t));
    const DimensionReport r = incompatibility_dimension_qubit(t, disc, opt);
    disagreements += r.disagreements;
    rows.push_back(to_json(r));
  }
  Json j{{"command", "incompat-scan"}, {"config", json_config(c)}, {"grid", c.grid}, {"rows", rows}};
  if (c.threshold) {
    spdlog::info("incompat-scan: estimating t0");
    j["threshold"] = to_json(estimate_t0(opt));
  }
  j["lp_disagreements"] = disagreements;
  CommandOutput out;
  out.text = header_line("incompat-scan") + dump(j);
  return out;
}

CommandOutput run_mixing_sweep(const RunConfig& c) {
  std::vector<TheoryPtr> theories;
  for (int n = c.n_min; n <= c.n_max; ++n) theories.push_back(make_polygon(n));
  if (c.include_disc) theories.push_back(make_disc());
  spdlog::info("mixing-sweep: {} theories on {} threads", theories.size(), c.resolved_jobs());
  const auto reps = parallel_map<ConsistencyReport>(
      theories.size(), c.resolved_jobs(),
      [&](std::size_t k) { return consistency_check(theories[k], c.granularity); });

  CommandOutput out;
  out.text = header_line("mixing-sweep") + unit_line(c);
  out.text += csv_row({"n", "comparison", "first", "second", "discrepancy", "verdict",
                       "geometry_residual", "certificates_verified"});
  const double unit = entropy_unit(c);
  for (const auto& r : reps) {
    const EntropyComparison* worst = nullptr;
    for (const auto& cmp : r.comparisons)
      if (!worst || cmp.discrepancy() > worst->discrepancy()) worst = &cmp;
    out.text += csv_row({r.n == 0 ? "inf" : std::to_string(r.n), worst ? worst->label : "",
                         num(worst ? worst->first / unit : 0.0),
                         num(worst ? worst->second / unit : 0.0), num(r.max_discrepancy / unit),
                         r.consistent ? "consistent" : "inconsistent",
                         num(r.closed_form_residual), r.certificates_verified ? "true" : "false"});
    if (!r.certificates_verified) {
      out.status = kExitCheckFailed;
      out.failure = "a distinguishability certificate failed verification for " + r.theory;
    }
  }
  return out;
}

CommandOutput run_mur_properties(const RunConfig& c) {
  std::vector<TheoryPtr> theories;
  for (const auto& spec : c.theories) theories.push_back(theory_from_json(spec));
  spdlog::info("mur-properties: {} theories, {} trials each", theories.size(), c.trials);

  struct Result {
    MurSweep sweep;
    MurReport exact;
  };
  const auto results = parallel_map<Result>(theories.size(), c.resolved_jobs(), [&](std::size_t k) {
    const auto [f, g] = default_pair(theories[k]);
    Result r;
    r.sweep = mur_property_sweep(f, g, c.trials, c.seed + k, c.tol, c.eps);
    // f measured jointly with itself: every distance vanishes.
    r.exact = theorem_witness_state(diagonal_joint(f), f, f, 0.25, 0.25);
    return r;
  });

  CommandOutput out;
  Json list = Json::array();
  int violations = 0;
  for (std::size_t k = 0; k < theories.size(); ++k) {
    const auto [f, g] = default_pair(theories[k]);
    const Result& r = results[k];
    violations += r.sweep.violations + r.sweep.werner_link_violations;
    list.push_back(Json{{"theory", to_json(*theories[k])},
                        {"seed", c.seed + k},
                        {"f", to_json(f)},
                        {"g", to_json(g)},
                        {"sweep", to_json(r.sweep)},
                        {"exact_joint", to_json(r.exact)}});
  }
  Json fuzzy = Json::array();
  if (!c.lambdas.empty()) {
    const TheoryPtr disc = make_disc();
    const auto [f, g] = default_pair(disc);
    for (double lambda : c.lambdas) {
      const MurReport rep = theorem_witness_state(mu_fuzzy_joint(disc, lambda), f, g, 0.25, 0.25);
      fuzzy.push_back(Json{{"lambda", lambda},
                           {"le_slack", rep.linf_sum - rep.le_sum},
                           {"report", to_json(rep)}});
    }
  }
  Json j{{"command", "mur-properties"},
         {"config", json_config(c)},
         {"trials", c.trials},
         {"werner_link_eps", c.eps},
         {"theories", list},
         {"disc_fuzzy_joints", fuzzy},
         {"total_violations", violations}};
  out.text = header_line("mur-properties") + dump(j);
  if (violations > 0) {
    out.status = kExitCheckFailed;
    out.failure = fmt::format("{} inequality violations; reproducers are in the output", violations);
  }
  return out;
}

CommandOutput run_command(const RunConfig& c) {
  if (c.command == "gamma-table") return run_gamma_table(c);
  if (c.command == "incompat-scan") return run_incompat_scan(c);
  if (c.command == "mixing-sweep") return run_mixing_sweep(c);
  if (c.command == "mur-properties") return run_mur_properties(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace gptlab::cli
