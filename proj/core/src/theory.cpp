#include "gptlab/theory.hpp"

#include <algorithm>
#include <cmath>

namespace gptlab {

std::string to_string(TheoryKind k) {
  switch (k) {
    case TheoryKind::Simplex: return "simplex";
    case TheoryKind::Polygon: return "polygon";
    case TheoryKind::Disc: return "disc";
    case TheoryKind::Custom: return "custom";
  }
  return "custom";
}

std::string to_string(Representation r) {
  return r == Representation::Rescaled ? "rescaled" : "standard";
}

std::string Theory::name() const {
  switch (kind_) {
    case TheoryKind::Simplex: return "simplex(" + std::to_string(order_) + ")";
    case TheoryKind::Polygon:
      return "polygon(" + std::to_string(order_) +
             (rep_ == Representation::Rescaled ? ",rescaled)" : ")");
    case TheoryKind::Disc: return "disc";
    case TheoryKind::Custom: return "custom(" + std::to_string(dim()) + ")";
  }
  return "custom";
}

double Theory::pair(const Vec& e, const Vec& w) const {
  if (e.size() != dim() || w.size() != dim()) throw TheoryError("pair: dimension mismatch");
  if (identity_gram_) return dot(e, w);
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) s += e[i] * gram_[i][j] * w[j];
  return s;
}

Vec Theory::disc_state(double th) const {
  if (kind_ != TheoryKind::Disc) throw TheoryError("disc_state: not a disc theory");
  return {std::cos(th), std::sin(th), 1.0};
}

Vec Theory::disc_effect(double th) const {
  if (kind_ != TheoryKind::Disc) throw TheoryError("disc_effect: not a disc theory");
  return {0.5 * std::cos(th), 0.5 * std::sin(th), 0.5};
}

std::vector<Vec> Theory::boundary_states(int k, double radius, double phase) const {
  if (kind_ != TheoryKind::Disc) throw TheoryError("boundary_states: not a disc theory");
  if (k < 3) throw TheoryError("boundary_states: need at least three samples");
  std::vector<Vec> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    const double th = phase + 2.0 * kPi * i / k;
    out.push_back({radius * std::cos(th), radius * std::sin(th), 1.0});
  }
  return out;
}

bool Theory::eigenstate_admitting() const {
  switch (kind_) {
    case TheoryKind::Simplex:
    case TheoryKind::Disc: return true;
    case TheoryKind::Polygon: return order_ % 2 == 1 || rep_ == Representation::Rescaled;
    case TheoryKind::Custom: return false;
  }
  return false;
}

std::pair<double, double> Theory::functional_range(const Vec& e) const {
  if (e.size() != dim()) throw TheoryError("functional_range: dimension mismatch");
  if (kind_ == TheoryKind::Disc) {
    const double c = e[2];
    const double rad = std::hypot(e[0], e[1]);
    return {c - rad, c + rad};
  }
  double lo = kInf, hi = -kInf;
  for (const auto& w : pure_states_) {
    const double v = pair(e, w);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double polygon_radius(int n) {
  if (n < 3) throw TheoryError("polygon_radius: n must be at least 3");
  return std::sqrt(1.0 / std::cos(kPi / n));
}

namespace {

Matrix identity(std::size_t d) {
  Matrix g(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) g[i][i] = 1.0;
  return g;
}

Vec centroid(const std::vector<Vec>& pts) {
  Vec c(pts.front().size(), 0.0);
  for (const auto& p : pts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (double& v : c) v /= static_cast<double>(pts.size());
  return c;
}

}  // namespace

TheoryPtr make_simplex(int d) {
  if (d < 2) throw TheoryError("make_simplex: d must be at least 2");
  auto t = std::shared_ptr<Theory>(new Theory());
  t->kind_ = TheoryKind::Simplex;
  t->order_ = d;
  t->unit_.assign(d, 1.0);
  t->gram_ = identity(d);
  for (int k = 0; k < d; ++k) {
    Vec v(d, 0.0);
    v[k] = 1.0;
    t->pure_states_.push_back(v);
    t->pure_effects_.push_back(v);
  }
  t->max_mixed_ = centroid(t->pure_states_);
  return t;
}

TheoryPtr make_polygon(int n, Representation rep) {
  if (n < 3) throw TheoryError("make_polygon: n must be at least 3");
  if (rep == Representation::Rescaled && n % 2 == 1)
    throw TheoryError("make_polygon: odd polygons are already self-dual; no rescaled form");
  auto t = std::shared_ptr<Theory>(new Theory());
  t->kind_ = TheoryKind::Polygon;
  t->order_ = n;
  t->rep_ = rep;
  t->unit_ = {0.0, 0.0, 1.0};
  t->gram_ = identity(3);
  const double r = polygon_radius(n);
  // The rescaled form applies diag(r, r, 1) to states and its inverse to effects.
  const double rs = rep == Representation::Rescaled ? r * r : r;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * i / n;
    t->pure_states_.push_back({rs * std::cos(a), rs * std::sin(a), 1.0});
  }
  for (int i = 0; i < n; ++i) {
    if (n % 2 == 0) {
      const double a = (2.0 * i - 1.0) * kPi / n;
      const double re = rep == Representation::Rescaled ? 1.0 : r;
      t->pure_effects_.push_back({0.5 * re * std::cos(a), 0.5 * re * std::sin(a), 0.5});
    } else {
      const double a = 2.0 * kPi * i / n;
      const double k = 1.0 / (1.0 + r * r);
      t->pure_effects_.push_back({k * r * std::cos(a), k * r * std::sin(a), k});
    }
  }
  t->max_mixed_ = {0.0, 0.0, 1.0};
  return t;
}

TheoryPtr make_disc(int resolution) {
  if (resolution < 8) throw TheoryError("make_disc: resolution must be at least 8");
  auto t = std::shared_ptr<Theory>(new Theory());
  t->kind_ = TheoryKind::Disc;
  t->resolution_ = resolution;
  t->unit_ = {0.0, 0.0, 1.0};
  t->gram_ = identity(3);
  t->max_mixed_ = {0.0, 0.0, 1.0};
  for (int i = 0; i < resolution; ++i) {
    const double a = 2.0 * kPi * i / resolution;
    t->pure_states_.push_back({std::cos(a), std::sin(a), 1.0});
    t->pure_effects_.push_back({0.5 * std::cos(a), 0.5 * std::sin(a), 0.5});
  }
  return t;
}

TheoryPtr make_custom(std::vector<Vec> pure_states, Vec unit, Matrix gram) {
  if (pure_states.empty()) throw TheoryError("make_custom: no pure states");
  const std::size_t d = unit.size();
  if (d == 0) throw TheoryError("make_custom: empty unit effect");
  for (const auto& s : pure_states)
    if (s.size() != d || !all_finite(s)) throw TheoryError("make_custom: bad pure state");
  auto t = std::shared_ptr<Theory>(new Theory());
  t->kind_ = TheoryKind::Custom;
  t->unit_ = std::move(unit);
  if (gram.empty()) {
    t->gram_ = identity(d);
  } else {
    if (gram.size() != d) throw TheoryError("make_custom: Gram matrix dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) {
      if (gram[i].size() != d) throw TheoryError("make_custom: Gram matrix not square");
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(gram[i][j] - gram[j][i]) > 1e-12)
          throw TheoryError("make_custom: Gram matrix not symmetric");
    }
    t->gram_ = std::move(gram);
    t->identity_gram_ = false;
  }
  t->pure_states_ = std::move(pure_states);
  for (const auto& s : t->pure_states_)
    if (std::abs(t->pair(t->unit_, s) - 1.0) > 1e-12)
      throw TheoryError("make_custom: unit effect does not normalize every pure state");
  t->max_mixed_ = centroid(t->pure_states_);
  return t;
}

bool is_state(const Theory& t, const Vec& v, double tol) {
  if (v.size() != t.dim()) throw TheoryError("is_state: dimension mismatch");
  if (!all_finite(v)) return false;
  if (std::abs(t.pair(t.unit(), v) - 1.0) > tol) return false;
  if (t.kind() == TheoryKind::Disc) return std::hypot(v[0], v[1]) <= 1.0 + tol;

  // Convex-hull membership: lambda >= 0, sum lambda = 1, sum lambda_i w_i = v.
  const auto& pts = t.pure_states();
  LinearProgram lp;
  lp.num_vars = pts.size();
  for (std::size_t c = 0; c < t.dim(); ++c) {
    Vec row(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) row[i] = pts[i][c];
    lp.add_eq(row, v[c]);
  }
  lp.add_eq(Vec(pts.size(), 1.0), 1.0);
  const auto res = solve_lp(lp, tol);
  return res.feasible() && res.max_violation <= 10.0 * tol;
}

bool is_effect(const Theory& t, const Vec& v, double tol) {
  if (v.size() != t.dim()) throw TheoryError("is_effect: dimension mismatch");
  if (!all_finite(v)) return false;
  const auto [lo, hi] = t.functional_range(v);
  return lo >= -tol && hi <= 1.0 + tol;
}

Vec eigenstate_of(const Theory& t, const Vec& e, double tol) {
  if (!t.eigenstate_admitting())
    throw TheoryError("eigenstate_of: theory is not self-dual in this representation");
  const double mass = t.pair(t.unit(), e);
  if (!(mass > tol)) throw TheoryError("eigenstate_of: effect has zero mass");
  Vec w = scale(e, 1.0 / mass);
  if (!is_state(t, w, std::max(tol, 1e-9)))
    throw TheoryError("eigenstate_of: normalized effect is not a state");
  return w;
}

}  // namespace gptlab
