#include <algorithm>
#include <cmath>
#include <optional>

#include "gptlab/uncertainty.hpp"

namespace gptlab {

namespace {

Vec gram_times(const Theory& t, const Vec& v) {
  const std::size_t d = t.dim();
  Vec out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += t.gram()[i][j] * v[j];
  return out;
}

double ball_mass(const Vec& p, const Metric& d, std::size_t a, double w) {
  double m = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (d[a][x] <= 0.5 * w + 1e-12) m += p[x];
  return m;
}

Vec raw_statistics(const Observable& f, const Vec& w) {
  Vec p(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) p[a] = f.theory->pair(f[a], w);
  return p;
}

struct Slack {
  double value;
  const char* name;
};

}  // namespace

MurReport theorem_witness_state(const JointObservable& joint, const Observable& f,
                                const Observable& g, double eps1, double eps2) {
  if (!(eps1 >= 0.0 && eps2 >= 0.0 && eps1 <= 1.0 && eps2 <= 1.0))
    throw UncertaintyError("theorem_witness_state: eps outside [0, 1]");
  if (eps1 + eps2 > 1.0 + 1e-15)
    throw UncertaintyError("theorem_witness_state: eps1 + eps2 exceeds 1");
  if (joint.rows != f.size() || joint.cols != g.size())
    throw UncertaintyError("theorem_witness_state: joint outcome sets do not match");

  const JointObservable j = self_dual_form(joint);
  const Observable F = self_dual_form(f);
  const Observable G = self_dual_form(g);
  const Theory& t = *F.theory;
  if (!t.eigenstate_admitting())
    throw UncertaintyError("theorem_witness_state: theory is not self-dual in this representation");

  MurReport rep;
  rep.representation = t.representation();
  rep.eps1 = eps1;
  rep.eps2 = eps2;

  auto [mf, mg] = marginals(j);
  mf.theory = F.theory;
  mg.theory = G.theory;
  const Metric df = F.outcome_metric();
  const Metric dg = G.outcome_metric();
  rep.errbar_f = error_bar_width(mf, F, eps1, df).value;
  rep.errbar_g = error_bar_width(mg, G, eps2, dg).value;

  const Vec& u = t.unit();
  double best_bar = -kInf, best_linf = -kInf;
  bool any = false;
  for (std::size_t a = 0; a < j.rows; ++a)
    for (std::size_t b = 0; b < j.cols; ++b) {
      const Vec& m = j.at(a, b);
      const double mass = t.pair(u, m);
      if (!(mass > 1e-12)) continue;
      any = true;
      const Vec w = scale(m, 1.0 / mass);
      const Vec pf = raw_statistics(F, w);
      const Vec pg = raw_statistics(G, w);
      const double bar = ball_mass(pf, df, a, rep.errbar_f) + ball_mass(pg, dg, b, rep.errbar_g);
      if (bar > best_bar) {
        best_bar = bar;
        rep.errbar_a = a;
        rep.errbar_b = b;
        rep.errbar_state = w;
      }
      const double lin = pf[a] + pg[b];
      if (lin > best_linf) {
        best_linf = lin;
        rep.linf_a = a;
        rep.linf_b = b;
        rep.linf_state = w;
      }
    }
  if (!any) throw UncertaintyError("theorem_witness_state: every joint cell has zero mass");

  const double eps = std::min(1.0, eps1 + eps2);
  rep.width_f = overall_width(measure(F, rep.errbar_state), df, eps, 1e-9).value;
  rep.width_g = overall_width(measure(G, rep.errbar_state), dg, eps, 1e-9).value;
  rep.werner_f = werner_measure(mf, F, df);
  rep.werner_g = werner_measure(mg, G, dg);

  rep.linf_sum = linf_distance(mf, F) + linf_distance(mg, G);
  rep.le_sum = localization_error(measure(F, rep.linf_state)) +
               localization_error(measure(G, rep.linf_state));

  rep.noise_sum = entropic_noise(mf, F) + entropic_noise(mg, G);
  rep.gamma = lp_gamma(F, G);
  rep.entropic_bound = entropic_pur_bound(std::min(rep.gamma, 2.0));

  std::vector<Slack> slacks{{rep.errbar_f - rep.width_f, "error bar F"},
                            {rep.errbar_g - rep.width_g, "error bar G"},
                            {rep.linf_sum - rep.le_sum, "l-infinity"},
                            {rep.noise_sum - rep.entropic_bound, "entropic"}};
  if (eps1 > 0.0) slacks.push_back({rep.werner_f - 0.5 * eps1 * rep.width_f, "Werner F"});
  if (eps2 > 0.0) slacks.push_back({rep.werner_g - 0.5 * eps2 * rep.width_g, "Werner G"});
  rep.min_slack = kInf;
  for (const auto& s : slacks)
    if (s.value < rep.min_slack) {
      rep.min_slack = s.value;
      rep.worst = s.name;
    }
  return rep;
}

JointObservable random_joint(const Observable& f, const Observable& g, std::mt19937_64& rng) {
  if (!f.theory || !g.theory || f.theory->dim() != g.theory->dim())
    throw UncertaintyError("random_joint: theory mismatch");
  const Theory& t = *f.theory;
  const std::size_t d = t.dim();
  const std::size_t rows = f.size(), cols = g.size(), nc = rows * cols;

  const std::vector<Vec> tests =
      t.parametric() ? t.boundary_states(64, 1.0 / std::cos(kPi / 64)) : t.pure_states();
  LinearProgram base;
  base.num_vars = nc * d;
  base.lower.assign(base.num_vars, -kInf);
  for (const auto& w : tests) {
    const Vec gw = gram_times(t, w);
    for (std::size_t c = 0; c < nc; ++c) {
      Vec row(base.num_vars, 0.0);
      for (std::size_t k = 0; k < d; ++k) row[c * d + k] = gw[k];
      base.add_ge(std::move(row), 0.0);
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    Vec row(base.num_vars, 0.0);
    for (std::size_t c = 0; c < nc; ++c) row[c * d + k] = 1.0;
    base.add_eq(std::move(row), t.unit()[k]);
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // A random objective plus a random pull toward reproducing f and g.
  auto vertex = [&]() -> std::optional<Vec> {
    LinearProgram lp = base;
    lp.objective.assign(base.num_vars, 0.0);
    const double pull = 2.0 * unif(rng);
    for (std::size_t c = 0; c < nc; ++c) {
      const Vec target = gram_times(t, add(f[c / cols], g[c % cols]));
      for (std::size_t k = 0; k < d; ++k) lp.objective[c * d + k] = normal(rng) + pull * target[k];
    }
    const auto r = solve_lp(lp);
    if (r.status != LpStatus::Optimal || r.max_violation > 1e-10) return std::nullopt;
    return r.x;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto x1 = vertex();
    const auto x2 = vertex();
    const double mix = unif(rng);
    if (!x1 || !x2) continue;
    std::vector<Vec> cells(nc, Vec(d));
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t k = 0; k < d; ++k)
        cells[c][k] = mix * (*x1)[c * d + k] + (1.0 - mix) * (*x2)[c * d + k];
    JointObservable j{f.theory, rows, cols, cells};
    if (joint_violation(j) > 1e-9) continue;
    return make_joint(f.theory, rows, cols, std::move(cells));
  }
  throw NumericError("random_joint: no valid joint observable after 64 attempts");
}

JointObservable mu_fuzzy_joint(const TheoryPtr& disc, double lambda) {
  if (!disc || disc->kind() != TheoryKind::Disc)
    throw UncertaintyError("mu_fuzzy_joint: disc theory required");
  if (!(lambda >= 0.0 && lambda <= 1.0 / std::sqrt(2.0) + 1e-15))
    throw UncertaintyError("mu_fuzzy_joint: lambda outside [0, 1/sqrt(2)]");
  std::vector<Vec> cells;
  for (double sa : {1.0, -1.0})
    for (double sb : {1.0, -1.0}) cells.push_back({0.25 * lambda * sa, 0.25 * lambda * sb, 0.25});
  return make_joint(disc, 2, 2, std::move(cells));
}

MurSweep mur_property_sweep(const Observable& f, const Observable& g, int trials,
                            std::uint64_t seed, double tol,
                            const std::vector<double>& link_eps) {
  if (trials < 0) throw UncertaintyError("mur_property_sweep: negative trial count");
  for (double eps : link_eps)
    if (!(eps > 0.0 && eps <= 1.0)) throw UncertaintyError("mur_property_sweep: eps outside (0, 1]");
  MurSweep s;
  s.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Theory& t = *f.theory;
  const double k = static_cast<double>(f.size());
  for (int trial = 0; trial < trials; ++trial) {
    JointObservable j = random_joint(f, g, rng);
    const double e1 = unif(rng);
    const double e2 = (1.0 - e1) * unif(rng);
    MurReport rep = theorem_witness_state(j, f, g, e1, e2);
    if (!rep.holds(tol)) ++s.violations;
    if (rep.min_slack < s.min_slack) {
      s.min_slack = rep.min_slack;
      s.worst = rep;
      s.worst_joint = j;
    }

    // Werner link on a uniformly fuzzed copy of f.
    const double lambda = unif(rng);
    Observable approx = f;
    for (auto& e : approx.effects) e = add(scale(e, lambda), scale(t.unit(), (1.0 - lambda) / k));
    const double dw = werner_measure(approx, f);
    for (double eps : link_eps) {
      const double slack = 2.0 / eps * dw - error_bar_width(approx, f, eps).value;
      s.werner_link_min_slack = std::min(s.werner_link_min_slack, slack);
      if (slack < -tol) ++s.werner_link_violations;
    }
  }
  return s;
}

}  // namespace gptlab
