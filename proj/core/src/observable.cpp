#include "gptlab/observable.hpp"

#include <algorithm>
#include <cmath>

namespace gptlab {

Metric discrete_metric(std::size_t k) {
  Metric d(k, Vec(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) d[i][i] = 0.0;
  return d;
}

Metric cyclic_metric(std::size_t k) {
  Metric d(k, Vec(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t g = i > j ? i - j : j - i;
      d[i][j] = static_cast<double>(std::min(g, k - g));
    }
  return d;
}

void validate_metric(const Metric& d, double tol) {
  const std::size_t k = d.size();
  for (const auto& row : d)
    if (row.size() != k) throw ObservableError("metric: not square");
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(d[i][i]) > tol) throw ObservableError("metric: nonzero diagonal");
    for (std::size_t j = 0; j < k; ++j) {
      if (!std::isfinite(d[i][j]) || d[i][j] < -tol) throw ObservableError("metric: bad entry");
      if (std::abs(d[i][j] - d[j][i]) > tol) throw ObservableError("metric: not symmetric");
      if (i != j && d[i][j] <= tol) throw ObservableError("metric: distinct points at distance 0");
      for (std::size_t l = 0; l < k; ++l)
        if (d[i][l] > d[i][j] + d[j][l] + tol)
          throw ObservableError("metric: triangle inequality fails");
    }
  }
}

Metric Observable::outcome_metric() const { return metric ? *metric : discrete_metric(size()); }

double observable_violation(const Observable& f) {
  const Theory& t = *f.theory;
  Vec sum(t.dim(), 0.0);
  double v = 0.0;
  for (const auto& e : f.effects) {
    sum = add(sum, e);
    const auto [lo, hi] = t.functional_range(e);
    v = std::max({v, -lo, hi - 1.0});
  }
  return std::max(v, max_abs_diff(sum, t.unit()));
}

Observable make_observable(TheoryPtr t, std::vector<Vec> effects, std::vector<std::string> labels,
                           std::optional<Metric> metric) {
  if (!t) throw ObservableError("make_observable: null theory");
  if (effects.empty()) throw ObservableError("make_observable: no effects");
  for (const auto& e : effects)
    if (e.size() != t->dim()) throw ObservableError("make_observable: dimension mismatch");
  if (labels.empty())
    for (std::size_t a = 0; a < effects.size(); ++a) labels.push_back(std::to_string(a));
  if (labels.size() != effects.size()) throw ObservableError("make_observable: label count");
  if (metric) {
    if (metric->size() != effects.size()) throw ObservableError("make_observable: metric size");
    validate_metric(*metric);
  }
  Vec sum(t->dim(), 0.0);
  for (const auto& e : effects) sum = add(sum, e);
  if (max_abs_diff(sum, t->unit()) > 1e-10)
    throw ObservableError("make_observable: effects do not sum to the unit effect");
  for (const auto& e : effects)
    if (!is_effect(*t, e, 1e-9)) throw ObservableError("make_observable: invalid effect");
  return Observable{std::move(t), std::move(effects), std::move(labels), std::move(metric)};
}

Observable binary_ideal(const TheoryPtr& t, int i) {
  const auto& pe = t->pure_effects();
  if (i < 0 || static_cast<std::size_t>(i) >= pe.size())
    throw ObservableError("binary_ideal: index out of range");
  return make_observable(t, {pe[i], sub(t->unit(), pe[i])});
}

Observable disc_binary(const TheoryPtr& t, double th) {
  const Vec e = t->disc_effect(th);
  return make_observable(t, {e, sub(t->unit(), e)});
}

namespace {

bool same_vec(const Vec& a, const Vec& b) { return max_abs_diff(a, b) <= 1e-10; }

// Same effects up to a relabeling of outcomes.
bool same_effect_set(const Observable& a, const Observable& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& e : a.effects) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size() && !hit; ++k)
      if (!used[k] && same_vec(e, b.effects[k])) used[k] = hit = true;
    if (!hit) return false;
  }
  return true;
}

void push_unique(std::vector<Observable>& out, Observable o) {
  for (const auto& p : out)
    if (same_effect_set(p, o)) return;
  out.push_back(std::move(o));
}

}  // namespace

IdealEnumeration enumerate_ideal_observables(const TheoryPtr& t) {
  IdealEnumeration res;
  auto& out = res.observables;
  const auto& pe = t->pure_effects();
  const Vec& u = t->unit();

  if (t->kind() == TheoryKind::Disc) {
    const int k = t->resolution();
    for (int i = 0; 2 * i < k; ++i) out.push_back(disc_binary(t, 2.0 * kPi * i / k));
    return res;
  }

  if (t->kind() == TheoryKind::Simplex) {
    const int d = t->order();
    out.push_back(make_observable(t, pe));
    for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
      if (mask & 1u) continue;  // the complement covers it
      Vec e(t->dim(), 0.0);
      for (int k = 0; k < d; ++k)
        if (mask & (1u << k)) e = add(e, pe[k]);
      push_unique(out, make_observable(t, {sub(u, e), e}));
    }
  } else {
    for (std::size_t i = 0; i < pe.size(); ++i)
      push_unique(out, make_observable(t, {pe[i], sub(u, pe[i])}));
    if (t->kind() == TheoryKind::Polygon && t->order() == 3) push_unique(out, make_observable(t, pe));
  }

  // Two-term sums that are valid effects but not yet represented.
  for (std::size_t i = 0; i < pe.size(); ++i)
    for (std::size_t j = i + 1; j < pe.size(); ++j) {
      const Vec s = add(pe[i], pe[j]);
      if (same_vec(s, u) || !is_effect(*t, s, 1e-9)) continue;
      bool known = false;
      for (const auto& o : out)
        for (const auto& e : o.effects) known = known || same_vec(e, s);
      if (!known) res.unexpected_sums.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return res;
}

std::vector<Observable> ideal_observables(const TheoryPtr& t) {
  return enumerate_ideal_observables(t).observables;
}

Observable fuzz(const Observable& f, double lambda) {
  if (f.size() != 2) throw ObservableError("fuzz: binary observable required");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ObservableError("fuzz: lambda outside [0, 1]");
  const Vec half = scale(f.theory->unit(), 0.5 * (1.0 - lambda));
  Observable g = f;
  for (auto& e : g.effects) e = add(scale(e, lambda), half);
  return g;
}

Vec measure(const Observable& f, const Vec& state) {
  const Theory& t = *f.theory;
  if (state.size() != t.dim()) throw ObservableError("measure: theory mismatch");
  Vec p(f.size());
  double sum = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    double v = t.pair(f.effects[a], state);
    if (v < -1e-6 || v > 1.0 + 1e-6) throw ObservableError("measure: probability out of range");
    v = std::clamp(v, 0.0, 1.0);
    p[a] = v;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw ObservableError("measure: probabilities do not sum to one");
  for (double& v : p) v /= sum;
  return p;
}

JointObservable make_joint(TheoryPtr t, std::size_t rows, std::size_t cols, std::vector<Vec> cells) {
  if (cells.size() != rows * cols) throw ObservableError("make_joint: cell count mismatch");
  JointObservable j{std::move(t), rows, cols, std::move(cells)};
  if (joint_violation(j) > 1e-8) throw ObservableError("make_joint: not a valid observable");
  return j;
}

double joint_violation(const JointObservable& j) {
  const Theory& t = *j.theory;
  Vec sum(t.dim(), 0.0);
  double v = 0.0;
  for (const auto& e : j.cells) {
    sum = add(sum, e);
    const auto [lo, hi] = t.functional_range(e);
    v = std::max({v, -lo, hi - 1.0});
  }
  return std::max(v, max_abs_diff(sum, t.unit()));
}

std::pair<Observable, Observable> marginals(const JointObservable& j) {
  const std::size_t d = j.theory->dim();
  std::vector<Vec> rows(j.rows, Vec(d, 0.0)), cols(j.cols, Vec(d, 0.0));
  for (std::size_t a = 0; a < j.rows; ++a)
    for (std::size_t b = 0; b < j.cols; ++b) {
      rows[a] = add(rows[a], j.at(a, b));
      cols[b] = add(cols[b], j.at(a, b));
    }
  auto labels = [](std::size_t k) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < k; ++i) l.push_back(std::to_string(i));
    return l;
  };
  // Marginals of a valid joint are valid up to the joint's own tolerance.
  return {Observable{j.theory, std::move(rows), labels(j.rows), std::nullopt},
          Observable{j.theory, std::move(cols), labels(j.cols), std::nullopt}};
}

JointObservable product_joint(const Observable& f, const Observable& g, const Vec& w0) {
  const Vec pf = measure(f, w0);
  std::vector<Vec> cells;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) cells.push_back(scale(g.effects[b], pf[a]));
  return make_joint(f.theory, f.size(), g.size(), std::move(cells));
}

}  // namespace gptlab
