#include "gptlab/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gptlab {

namespace {

Vec gram_times(const Theory& t, const Vec& v) {
  const std::size_t d = t.dim();
  Vec out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += t.gram()[i][j] * v[j];
  return out;
}

bool planar(const Theory& t) {
  return t.kind() == TheoryKind::Polygon || t.kind() == TheoryKind::Disc;
}

Vec point(double x, double y) { return {x, y, 1.0}; }

// Parameters s_min < 0 < s_max where w + s dir leaves the state space.
std::optional<std::pair<double, double>> chord(const Theory& t, const Vec& w, double dx, double dy) {
  if (t.kind() == TheoryKind::Disc) {
    const double wd = w[0] * dx + w[1] * dy;
    const double disc = wd * wd - (w[0] * w[0] + w[1] * w[1]) + 1.0;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    return std::make_pair(-wd - root, -wd + root);
  }
  const auto& ps = t.pure_states();
  double lo = kInf, hi = -kInf;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Vec& p = ps[k];
    const Vec& q = ps[(k + 1) % ps.size()];
    const double ex = q[0] - p[0], ey = q[1] - p[1];
    const double det = -dx * ey + ex * dy;
    if (std::abs(det) < 1e-14) continue;
    const double rx = p[0] - w[0], ry = p[1] - w[1];
    const double s = (-rx * ey + ex * ry) / det;
    const double tau = (dx * ry - dy * rx) / det;
    if (tau < -1e-12 || tau > 1.0 + 1e-12) continue;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

bool same_point(const Vec& a, const Vec& b) { return max_abs_diff(a, b) <= 1e-9; }

Vec intersect(const Vec& a, const Vec& b, const Vec& c, const Vec& d, double* s_out = nullptr,
              double* t_out = nullptr) {
  // a + s (b - a) = c + t (d - c)
  const double m00 = b[0] - a[0], m01 = c[0] - d[0];
  const double m10 = b[1] - a[1], m11 = c[1] - d[1];
  const double r0 = c[0] - a[0], r1 = c[1] - a[1];
  const double det = m00 * m11 - m01 * m10;
  if (std::abs(det) < 1e-14) throw MixingError("intersect: parallel chords");
  const double s = (r0 * m11 - m01 * r1) / det;
  const double t = (m00 * r1 - m10 * r0) / det;
  if (s_out) *s_out = s;
  if (t_out) *t_out = t;
  return axpy(a, s, sub(b, a));
}

DistinguishableFamily certified(const TheoryPtr& t, std::vector<Vec> states) {
  auto cert = find_distinguishing_observable(t, states);
  if (!cert) throw MixingError("consistency_check: witness pair is not perfectly distinguishable");
  return DistinguishableFamily{std::move(states), std::move(*cert)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double certificate_residual(const DistinguishableFamily& f) {
  const Theory& t = *f.certificate.theory;
  double r = 0.0;
  for (std::size_t i = 0; i < f.certificate.size(); ++i)
    for (std::size_t j = 0; j < f.states.size(); ++j)
      r = std::max(r, std::abs(t.pair(f.certificate[i], f.states[j]) - (i == j ? 1.0 : 0.0)));
  return r;
}

bool is_pure_state(const Theory& t, const Vec& w, double tol) {
  if (t.kind() == TheoryKind::Disc) return std::hypot(w[0], w[1]) >= 1.0 - tol;
  for (const auto& p : t.pure_states())
    if (max_abs_diff(p, w) <= tol) return true;
  return false;
}

std::optional<Observable> find_distinguishing_observable(const TheoryPtr& tp,
                                                         const std::vector<Vec>& states,
                                                         double tol) {
  if (!tp) throw MixingError("find_distinguishing_observable: missing theory");
  const Theory& t = *tp;
  if (states.empty()) throw MixingError("find_distinguishing_observable: empty family");
  for (const auto& s : states)
    if (s.size() != t.dim() || !is_state(t, s, 1e-9))
      throw MixingError("find_distinguishing_observable: input is not a state of the theory");
  if (states.size() == 1) return make_observable(tp, {t.unit()});

  if (t.kind() == TheoryKind::Disc) {
    if (states.size() != 2) return std::nullopt;
    if (!is_pure_state(t, states[0], tol) || !is_pure_state(t, states[1], tol)) return std::nullopt;
    if (std::hypot(states[0][0] + states[1][0], states[0][1] + states[1][1]) > tol)
      return std::nullopt;
    const Vec e = t.disc_effect(std::atan2(states[0][1], states[0][0]));
    return make_observable(tp, {e, sub(t.unit(), e)});
  }

  const std::size_t m = states.size(), d = t.dim();
  LinearProgram lp;
  lp.num_vars = m * d;
  lp.lower.assign(lp.num_vars, -kInf);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec row(lp.num_vars, 0.0);
      const Vec gs = gram_times(t, states[j]);
      for (std::size_t k = 0; k < d; ++k) row[i * d + k] = gs[k];
      lp.add_eq(std::move(row), i == j ? 1.0 : 0.0);
    }
  for (std::size_t k = 0; k < d; ++k) {
    Vec row(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < m; ++i) row[i * d + k] = 1.0;
    lp.add_eq(std::move(row), t.unit()[k]);
  }
  for (const auto& p : t.pure_states()) {
    const Vec gp = gram_times(t, p);
    for (std::size_t i = 0; i < m; ++i) {
      Vec row(lp.num_vars, 0.0);
      for (std::size_t k = 0; k < d; ++k) row[i * d + k] = gp[k];
      lp.add_ge(std::move(row), 0.0);
    }
  }
  const auto r = solve_lp(lp);
  if (!r.feasible()) return std::nullopt;
  std::vector<Vec> effects(m, Vec(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) effects[i][k] = r.x[i * d + k];
  for (const auto& e : effects)
    if (!is_effect(t, e, tol)) return std::nullopt;
  DistinguishableFamily fam{states, Observable{tp, effects, {}, std::nullopt}};
  if (certificate_residual(fam) > tol) return std::nullopt;
  try {
    return make_observable(tp, std::move(effects));
  } catch (const ObservableError&) {
    return std::nullopt;
  }
}

std::vector<Decomposition> enumerate_decompositions(const TheoryPtr& tp, const Vec& w,
                                                    int granularity) {
  if (!tp || !planar(*tp)) throw MixingError("enumerate_decompositions: Polygon(n) or Disc required");
  if (granularity < 1) throw MixingError("enumerate_decompositions: granularity must be positive");
  const Theory& t = *tp;
  if (w.size() != t.dim() || !is_state(t, w, 1e-9))
    throw MixingError("enumerate_decompositions: input is not a state");

  std::vector<Decomposition> out;
  if (is_pure_state(t, w)) {
    out.push_back({w, {{w}, make_observable(tp, {t.unit()})}, {1.0}, {true}});
    return out;
  }

  std::vector<double> angles;
  for (int k = 0; k < granularity; ++k) angles.push_back(kPi * k / granularity);
  if (t.kind() == TheoryKind::Disc) {
    if (std::hypot(w[0], w[1]) > 1e-12) angles.push_back(std::atan2(w[1], w[0]));
  } else {
    for (const auto& p : t.pure_states()) angles.push_back(std::atan2(p[1] - w[1], p[0] - w[0]));
  }
  for (double& a : angles) {
    a = std::fmod(a, kPi);
    if (a < 0.0) a += kPi;
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               angles.end());

  for (double a : angles) {
    const double dx = std::cos(a), dy = std::sin(a);
    const auto c = chord(t, w, dx, dy);
    if (!c || c->first > -1e-12 || c->second < 1e-12) continue;
    const Vec b1 = point(w[0] + c->second * dx, w[1] + c->second * dy);
    const Vec b2 = point(w[0] + c->first * dx, w[1] + c->first * dy);
    bool dup = false;
    for (const auto& d : out) {
      const auto& s = d.family.states;
      if ((same_point(s[0], b1) && same_point(s[1], b2)) || (same_point(s[0], b2) && same_point(s[1], b1)))
        dup = true;
    }
    if (dup) continue;
    auto cert = find_distinguishing_observable(tp, {b1, b2});
    if (!cert) continue;
    const double p = -c->first / (c->second - c->first);
    out.push_back({w, {{b1, b2}, std::move(*cert)}, {p, 1.0 - p},
                   {is_pure_state(t, b1, 1e-9), is_pure_state(t, b2, 1e-9)}});
  }
  return out;
}

double entropy_of_decomposition(const Decomposition& d, const std::vector<std::optional<double>>& base) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.weights.size(); ++i) {
    const double p = d.weights[i];
    if (p > 0.0) s -= p * std::log(p);
    if (d.pure[i]) continue;
    if (i >= base.size() || !base[i])
      throw MixingError("entropy_of_decomposition: missing base entropy for a mixed component");
    s += p * *base[i];
  }
  return s;
}

double omega_a_entropy_q(double alpha) {
  auto xlogx = [](double x) { return x <= 0.0 ? 0.0 : x * std::log(x); };
  const double a2 = alpha * alpha;
  return 2.0 * a2 * std::log(2.0) + 0.5 * xlogx(1.0 - 4.0 * a2) - xlogx(1.0 - 2.0 * a2);
}

double omega_a_entropy_r(double alpha, int sign) {
  if (sign != 1 && sign != -1) throw MixingError("omega_a_entropy_r: sign must be +1 or -1");
  const double s = static_cast<double>(sign);
  const double x = 1.0 - 2.0 * s * alpha;
  const double first = x <= 0.0 ? 0.0 : x * std::log(x);
  return first - (2.0 - 2.0 * s * alpha) * std::log(1.0 - s * alpha);
}

int omega_a_r_sign(int n) {
  if (n < 3 || n % 2 == 0) throw MixingError("omega_a_r_sign: odd n >= 3 required");
  return n % 4 == 3 ? 1 : -1;
}

double even_ratio(int n) {
  if (n < 4) throw MixingError("even_ratio: n >= 4 required");
  const double r = std::cos(2.0 * kPi / n) / std::cos(kPi / n);
  return r * r;
}

double EntropyComparison::discrepancy() const { return std::abs(first - second); }

namespace {

// S via the first non-degenerate decomposition, recursing into mixed parts.
double bootstrap_entropy(const TheoryPtr& t, const Vec& w, int granularity, int depth) {
  if (is_pure_state(*t, w, 1e-9)) return 0.0;
  if (depth > 4) throw MixingError("consistency_check: decomposition recursion too deep");
  const auto ds = enumerate_decompositions(t, w, granularity);
  if (ds.empty()) throw MixingError("consistency_check: state without a decomposition");
  const Decomposition& d = ds.front();
  std::vector<std::optional<double>> base;
  for (std::size_t i = 0; i < d.weights.size(); ++i)
    base.push_back(d.pure[i] ? 0.0 : bootstrap_entropy(t, d.family.states[i], granularity, depth + 1));
  return entropy_of_decomposition(d, base);
}

void finish(ConsistencyReport& rep) {
  rep.max_discrepancy = 0.0;
  for (const auto& c : rep.comparisons) rep.max_discrepancy = std::max(rep.max_discrepancy, c.discrepancy());
  rep.consistent = rep.max_discrepancy < 1e-9;
}

ConsistencyReport check_unique(const TheoryPtr& t, int granularity) {
  ConsistencyReport rep;
  rep.theory = t->name();
  rep.n = t->kind() == TheoryKind::Disc ? 0 : t->order();
  rep.certificates_verified = true;

  std::vector<Vec> samples{t->max_mixed()};
  if (t->kind() == TheoryKind::Disc) {
    for (double r : {0.3, 0.8})
      for (int k = 0; k < 3; ++k)
        samples.push_back(point(r * std::cos(0.7 + 2.1 * k), r * std::sin(0.7 + 2.1 * k)));
  } else {
    const auto& ps = t->pure_states();
    const int m = 6;
    for (int i = 1; i < m; ++i)
      for (int j = 1; i + j < m; ++j) {
        const double a = static_cast<double>(i) / m, b = static_cast<double>(j) / m;
        samples.push_back(add(add(scale(ps[0], a), scale(ps[1], b)), scale(ps[2], 1.0 - a - b)));
      }
  }

  for (const auto& w : samples) {
    const auto ds = enumerate_decompositions(t, w, granularity);
    rep.decompositions_found += static_cast<int>(ds.size());
    double lo = kInf, hi = -kInf;
    for (const auto& d : ds) {
      if (certificate_residual(d.family) > 1e-9) rep.certificates_verified = false;
      std::vector<std::optional<double>> base;
      for (std::size_t i = 0; i < d.weights.size(); ++i)
        base.push_back(d.pure[i] ? 0.0 : bootstrap_entropy(t, d.family.states[i], granularity, 1));
      const double s = entropy_of_decomposition(d, base);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (ds.empty()) throw MixingError("consistency_check: state without a decomposition");
    rep.comparisons.push_back({"w=(" + fmt(w[0]) + "," + fmt(w[1]) + ")", lo, hi});
    if (t->kind() == TheoryKind::Disc && same_point(w, t->max_mixed())) rep.s_max_mixed = hi;
  }
  finish(rep);
  rep.witness = rep.consistent ? "" : rep.comparisons.front().label;
  return rep;
}

ConsistencyReport check_square(const TheoryPtr& t) {
  ConsistencyReport rep;
  rep.theory = t->name();
  rep.n = 4;
  const auto& ps = t->pure_states();
  const Vec mid01 = scale(add(ps[0], ps[1]), 0.5);
  const Vec mid23 = scale(add(ps[2], ps[3]), 0.5);
  const auto diag = certified(t, {ps[0], ps[2]});
  const auto edges = certified(t, {mid01, mid23});
  const auto edge = certified(t, {ps[0], ps[1]});
  rep.certificates_verified = certificate_residual(diag) <= 1e-9 &&
                              certificate_residual(edges) <= 1e-9 &&
                              certificate_residual(edge) <= 1e-9;
  const double s_edge = entropy_of_decomposition({mid01, edge, {0.5, 0.5}, {true, true}});
  const double s_diag = entropy_of_decomposition({t->max_mixed(), diag, {0.5, 0.5}, {true, true}});
  const double s_mid = entropy_of_decomposition({t->max_mixed(), edges, {0.5, 0.5}, {false, false}},
                                                {s_edge, s_edge});
  rep.comparisons.push_back({"omega_M: vertices (0,2) vs edge midpoints (01,23)", s_diag, s_mid});
  rep.decompositions_found = static_cast<int>(enumerate_decompositions(t, t->max_mixed()).size());
  finish(rep);
  rep.witness = "omega_M";
  return rep;
}

ConsistencyReport check_even(const TheoryPtr& t, int granularity) {
  const int n = t->order();
  ConsistencyReport rep;
  rep.theory = t->name();
  rep.n = n;
  const auto& ps = t->pure_states();
  const int h = n / 2;
  double s1 = 0.0, s2 = 0.0;
  const Vec wp = intersect(ps[0], ps[h], ps[1], ps[(h + 2) % n], &s1, &s2);
  const auto c1 = certified(t, {ps[0], ps[h]});
  const auto c2 = certified(t, {ps[1], ps[(h + 2) % n]});
  rep.certificates_verified = certificate_residual(c1) <= 1e-9 && certificate_residual(c2) <= 1e-9;

  // w_P = (1 - s1) w_0 + s1 w_h = (1 - s2) w_1 + s2 w_{h+2}
  const double x = std::min(s1, 1.0 - s1);
  const double s_geo = std::min(s2, 1.0 - s2);
  const double s_closed = x / (x + even_ratio(n) * (1.0 - x));
  rep.closed_form_residual = std::abs(s_geo - s_closed);
  rep.comparisons.push_back({"omega_P: chord (0," + std::to_string(h) + ") vs chord (1," +
                                 std::to_string((h + 2) % n) + ")",
                             binary_entropy(x), binary_entropy(s_closed)});
  rep.decompositions_found = static_cast<int>(enumerate_decompositions(t, wp, granularity).size());
  finish(rep);
  rep.witness = "omega_P";
  return rep;
}

ConsistencyReport check_odd(const TheoryPtr& t, int granularity) {
  const int n = t->order();
  ConsistencyReport rep;
  rep.theory = t->name();
  rep.n = n;
  const auto& ps = t->pure_states();
  const int lo = (n - 1) / 2, hi = (n + 1) / 2;
  const int j = n % 4 == 3 ? (n + 1) / 4 : (n - 1) / 4;
  const Vec wa = scale(add(ps[lo], ps[hi]), 0.5);

  double pq = 0.0, tq = 0.0, pr = 0.0, tr = 0.0;
  const Vec wq = intersect(ps[0], wa, ps[1], ps[hi], &pq, &tq);
  const Vec wr = intersect(ps[0], wa, ps[j], ps[n - j], &pr, &tr);
  const auto ca = certified(t, {ps[0], wa});
  const auto cq = certified(t, {ps[1], ps[hi]});
  const auto cr = certified(t, {ps[j], ps[n - j]});
  rep.certificates_verified = certificate_residual(ca) <= 1e-9 &&
                              certificate_residual(cq) <= 1e-9 &&
                              certificate_residual(cr) <= 1e-9;

  // w_Q = (1 - pq) w_0 + pq w_A = (1 - tq) w_1 + tq w_hi, and likewise for w_R;
  // S(w_A) is solved from each.
  const double sa_q = (binary_entropy(tq) - binary_entropy(pq)) / pq;
  const double sa_r = (binary_entropy(tr) - binary_entropy(pr)) / pr;
  const double alpha = std::sin(kPi / (2.0 * n));
  const double e5 = omega_a_entropy_q(alpha);
  const double e6 = omega_a_entropy_r(alpha, omega_a_r_sign(n));
  rep.closed_form_residual = std::max(std::abs(sa_q - e5), std::abs(sa_r - e6));
  rep.comparisons.push_back({"S(omega_A): chord Q vs chord R", e5, e6});
  rep.decompositions_found = static_cast<int>(enumerate_decompositions(t, wq, granularity).size() +
                                              enumerate_decompositions(t, wr, granularity).size());
  finish(rep);
  rep.witness = "omega_A";
  return rep;
}

}  // namespace

ConsistencyReport consistency_check(const TheoryPtr& t, int granularity) {
  if (!t || !planar(*t)) throw MixingError("consistency_check: Polygon(n) or Disc required");
  if (granularity < 1) throw MixingError("consistency_check: granularity must be positive");
  if (t->kind() == TheoryKind::Disc || t->order() == 3) return check_unique(t, granularity);
  if (t->order() == 4) return check_square(t);
  if (t->order() % 2 == 0) return check_even(t, granularity);
  return check_odd(t, granularity);
}

}  // namespace gptlab
