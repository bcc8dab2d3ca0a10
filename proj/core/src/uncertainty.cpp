#include "gptlab/uncertainty.hpp"

#include <algorithm>
#include <cmath>

namespace gptlab {

namespace {

void check_eps(double eps, const char* who) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw UncertaintyError(std::string(who) + ": eps outside [0, 1]");
}

void check_pair(const Observable& approx, const Observable& ideal, const char* who) {
  if (!approx.theory || !ideal.theory) throw UncertaintyError(std::string(who) + ": missing theory");
  if (approx.size() != ideal.size())
    throw UncertaintyError(std::string(who) + ": outcome sets differ");
  if (approx.theory->dim() != ideal.theory->dim() ||
      approx.theory->representation() != ideal.theory->representation())
    throw UncertaintyError(std::string(who) + ": theory mismatch");
}

void check_metric(const Metric& d, std::size_t k, const char* who) {
  if (d.size() != k) throw UncertaintyError(std::string(who) + ": metric size mismatch");
  validate_metric(d);
}

// Mass of p on the ball of width w around a.
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

std::vector<Vec> differences(const Observable& approx, const Observable& ideal) {
  std::vector<Vec> out;
  for (std::size_t a = 0; a < ideal.size(); ++a) out.push_back(sub(approx[a], ideal[a]));
  return out;
}

double abs_sup(const Theory& t, const Vec& e) {
  const auto [lo, hi] = t.functional_range(e);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

std::vector<double> width_candidates(const Metric& d) {
  std::vector<double> c{0.0};
  for (const auto& row : d)
    for (double v : row) c.push_back(2.0 * v);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
          c.end());
  return c;
}

WidthResult overall_width(const Vec& p, const Metric& d, double eps, double tol) {
  check_eps(eps, "overall_width");
  check_metric(d, p.size(), "overall_width");
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-9) throw UncertaintyError("overall_width: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw UncertaintyError("overall_width: not normalized");
  const auto cand = width_candidates(d);
  for (double w : cand)
    for (std::size_t a = 0; a < p.size(); ++a)
      if (ball_mass(p, d, a, w) >= 1.0 - eps - tol) return {w, true};
  return {cand.back(), false};
}

double localization_error(const Vec& p) {
  if (p.empty()) throw UncertaintyError("localization_error: empty distribution");
  return 1.0 - *std::max_element(p.begin(), p.end());
}

std::vector<Vec> eigenstates(const Theory& t, const Vec& f, double tol) {
  if (f.size() != t.dim()) throw UncertaintyError("eigenstates: dimension mismatch");
  std::vector<Vec> out;
  if (t.kind() == TheoryKind::Disc) {
    const double rad = std::hypot(f[0], f[1]);
    if (f[2] + rad < 1.0 - tol) return out;
    if (rad <= tol) return t.pure_states();
    out.push_back(t.disc_state(std::atan2(f[1], f[0])));
    return out;
  }
  for (const auto& w : t.pure_states())
    if (t.pair(f, w) >= 1.0 - tol) out.push_back(w);
  return out;
}

WidthResult error_bar_width(const Observable& approx, const Observable& ideal, double eps,
                            const Metric& d, double tol) {
  check_eps(eps, "error_bar_width");
  check_pair(approx, ideal, "error_bar_width");
  check_metric(d, ideal.size(), "error_bar_width");
  const Theory& t = *ideal.theory;
  std::vector<std::vector<Vec>> faces;
  for (std::size_t a = 0; a < ideal.size(); ++a) {
    faces.push_back(eigenstates(t, ideal[a]));
    if (faces.back().empty())
      throw UncertaintyError("error_bar_width: ideal effect " + std::to_string(a) +
                             " has no eigenstate");
  }
  const auto cand = width_candidates(d);
  for (double w : cand) {
    bool ok = true;
    for (std::size_t a = 0; a < ideal.size() && ok; ++a)
      for (const auto& s : faces[a])
        if (ball_mass(raw_statistics(approx, s), d, a, w) < 1.0 - eps - tol) {
          ok = false;
          break;
        }
    if (ok) return {w, true};
  }
  return {cand.back(), false};
}

WidthResult error_bar_width(const Observable& approx, const Observable& ideal, double eps,
                            double tol) {
  return error_bar_width(approx, ideal, eps, ideal.outcome_metric(), tol);
}

double werner_measure(const Observable& approx, const Observable& ideal, const Metric& d) {
  check_pair(approx, ideal, "werner_measure");
  check_metric(d, ideal.size(), "werner_measure");
  const Theory& t = *ideal.theory;
  const std::size_t k = ideal.size();
  const auto delta = differences(approx, ideal);
  if (k == 1) return 0.0;

  // h_0 = 0 fixes the shift; the remaining h_a are free.
  LinearProgram base;
  base.num_vars = k - 1;
  base.lower.assign(k - 1, -kInf);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      Vec row(k - 1, 0.0);
      if (a > 0) row[a - 1] += 1.0;
      if (b > 0) row[b - 1] -= 1.0;
      base.add_le(std::move(row), d[a][b]);
    }

  // The optimal h at each sampled pure state is scored by its exact supremum
  // over the state space.
  auto value_of = [&](const Vec& h) {
    Vec e(t.dim(), 0.0);
    for (std::size_t a = 1; a < k; ++a) e = axpy(e, h[a - 1], delta[a]);
    return abs_sup(t, e);
  };
  double best = 0.0;
  for (const auto& w : t.pure_states()) {
    Vec c(k - 1);
    for (std::size_t a = 1; a < k; ++a) c[a - 1] = t.pair(delta[a], w);
    for (double sign : {1.0, -1.0}) {
      LinearProgram lp = base;
      lp.objective = scale(c, sign);
      const auto r = solve_lp(lp);
      if (r.status != LpStatus::Optimal) throw NumericError("werner_measure: Lipschitz LP failed");
      best = std::max(best, value_of(r.x));
    }
  }
  return best;
}

double werner_measure(const Observable& approx, const Observable& ideal) {
  return werner_measure(approx, ideal, ideal.outcome_metric());
}

double linf_distance(const Observable& approx, const Observable& ideal) {
  check_pair(approx, ideal, "linf_distance");
  double best = 0.0;
  for (const auto& e : differences(approx, ideal)) best = std::max(best, abs_sup(*ideal.theory, e));
  return best;
}

namespace {

bool needs_rescale(const Theory& t) {
  return t.kind() == TheoryKind::Polygon && t.order() % 2 == 0 &&
         t.representation() == Representation::Standard;
}

Vec rescale_effect(const Vec& e, double r) { return {e[0] / r, e[1] / r, e[2]}; }

}  // namespace

Observable self_dual_form(const Observable& f) {
  if (!f.theory || !needs_rescale(*f.theory)) return f;
  const int n = f.theory->order();
  const double r = polygon_radius(n);
  Observable g = f;
  g.theory = make_polygon(n, Representation::Rescaled);
  for (auto& e : g.effects) e = rescale_effect(e, r);
  return g;
}

JointObservable self_dual_form(const JointObservable& j) {
  if (!j.theory || !needs_rescale(*j.theory)) return j;
  const int n = j.theory->order();
  const double r = polygon_radius(n);
  JointObservable k = j;
  k.theory = make_polygon(n, Representation::Rescaled);
  for (auto& e : k.cells) e = rescale_effect(e, r);
  return k;
}

double entropic_noise(const Observable& approx, const Observable& ideal) {
  if (!approx.theory || !ideal.theory) throw UncertaintyError("entropic_noise: missing theory");
  const Theory& t = *ideal.theory;
  if (!t.eigenstate_admitting())
    throw UncertaintyError("entropic_noise: theory is not self-dual in this representation");
  if (approx.theory->dim() != t.dim() || approx.theory->representation() != t.representation())
    throw UncertaintyError("entropic_noise: theory mismatch");
  const Vec& u = t.unit();
  const double uu = t.pair(u, u);
  double h = 0.0;
  for (const auto& m : approx.effects) {
    const double pm = t.pair(u, m) / uu;
    if (pm <= 1e-15) continue;
    Vec cond(ideal.size());
    for (std::size_t x = 0; x < ideal.size(); ++x) cond[x] = std::max(0.0, t.pair(ideal[x], m) / uu / pm);
    double s = 0.0;
    for (double v : cond) s += v;
    for (double& v : cond) v /= s;
    h += pm * shannon_entropy(cond);
  }
  return h;
}

}  // namespace gptlab
