#include "gptlab/qubit.hpp"

#include <algorithm>
#include <cmath>

namespace gptlab {

namespace {

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }
double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Both roots of a x^2 + b x + c = 0 (real, c != 0), computed without cancellation.
std::pair<double, double> quadratic_roots(double a, double b, double c) {
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (a == 0.0) {
    const double r = -c / b;
    return {r, r};
  }
  const double r1 = q / a;
  const double r2 = c / q;
  return {std::min(r1, r2), std::max(r1, r2)};
}

// Smallest xi in (phi0 - pi, phi0) with 1 - w1 = C1 (sign = -1) or 1 + w1 = C1
// (sign = +1), from sin(phi0) cos(xi) = t sin(phi0) + (cos(phi0) + sign t cos(psi0)) sin(xi).
double xi_root(double t, double phi0, double psi0, double sign) {
  const double sp = std::sin(phi0), cp = std::cos(phi0), cq = std::cos(psi0);
  const double k = cp + sign * t * cq;
  const double a = k * k + sp * sp;
  const double b = 2.0 * t * sp * k;
  const double c = (t * t - 1.0) * sp * sp;
  const auto [neg, pos] = quadratic_roots(a, b, c);
  const double s = sign < 0 ? neg : pos;
  const double xi = std::asin(std::clamp(s, -1.0, 1.0));
  // The squared equation also admits the cos(xi) < 0 branch.
  if (t * sp + k * s < 0.0) return (s < 0 ? -kPi : kPi) - xi;
  return xi;
}

}  // namespace

bool is_valid_qubit_effect(const QubitEffect& e, double tol) {
  return std::isfinite(e.w) && std::isfinite(e.m[0]) && std::isfinite(e.m[1]) &&
         norm2(e.m) <= 1.0 - std::abs(e.w) + tol;
}

Observable qubit_observable(const TheoryPtr& disc, const QubitEffect& e) {
  if (!disc || disc->kind() != TheoryKind::Disc)
    throw QubitError("qubit_observable: disc theory required");
  if (!is_valid_qubit_effect(e, 1e-9)) throw QubitError("qubit_observable: invalid effect");
  Vec plus{0.5 * e.m[0], 0.5 * e.m[1], 0.5 * (1.0 + e.w)};
  Vec minus{-0.5 * e.m[0], -0.5 * e.m[1], 0.5 * (1.0 - e.w)};
  return make_observable(disc, {plus, minus}, {"+", "-"});
}

std::pair<Observable, Observable> mu_pair(const TheoryPtr& disc, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw QubitError("mu_pair: t outside [0, 1]");
  return {qubit_observable(disc, {0.0, {t, 0.0}}), qubit_observable(disc, {0.0, {0.0, t}})};
}

bool qubit_pair_compatible_closed_form(const Vec3& a, const Vec3& b) {
  if (norm3(a) > 1.0 + 1e-12 || norm3(b) > 1.0 + 1e-12)
    throw QubitError("qubit_pair_compatible_closed_form: vector outside the unit ball");
  const Vec3 s{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  const Vec3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  return norm3(s) + norm3(d) <= 2.0;
}

BuschResult busch_unbiased_compatible(const QubitEffect& e1, const QubitEffect& e2, double tol) {
  if (!is_valid_qubit_effect(e1, 1e-9) || !is_valid_qubit_effect(e2, 1e-9))
    throw QubitError("busch_unbiased_compatible: invalid effect parameters");
  auto big_f = [](const QubitEffect& e) {
    const double c = std::min(norm2(e.m), 1.0 - std::abs(e.w));
    const double p = std::max(0.0, (1.0 + e.w) * (1.0 + e.w) - c * c);
    const double q = std::max(0.0, (1.0 - e.w) * (1.0 - e.w) - c * c);
    return 0.5 * (std::sqrt(p) + std::sqrt(q));
  };
  const double f1 = big_f(e1), f2 = big_f(e2);
  BuschResult r;
  if (f1 <= 1e-12 || f2 <= 1e-12) {
    // A sharp unbiased effect is a projection: compatible iff the Bloch
    // vectors are parallel.
    r.degenerate = true;
    r.lhs = std::abs(e1.m[0] * e2.m[1] - e1.m[1] * e2.m[0]);
    r.rhs = 0.0;
    r.compatible = r.lhs <= std::max(tol, 1e-9);
    return r;
  }
  r.lhs = (1.0 - f1 * f1 - f2 * f2) * (1.0 - e1.w * e1.w / (f1 * f1) - e2.w * e2.w / (f2 * f2));
  const double x = dot2(e1.m, e2.m) - e1.w * e2.w;
  r.rhs = x * x;
  r.compatible = r.lhs <= r.rhs + tol;
  return r;
}

double busch_margin(const QubitEffect& e1, const QubitEffect& e2) {
  return busch_unbiased_compatible(e1, e2).margin();
}

bool busch_min_form_compatible(double w1, double w2, double sum_xi, double tol) {
  const double s = std::sin(sum_xi);
  if (1.0 - s <= tol) return true;
  const double v =
      ((1.0 - s) * w1 * w2 - (1.0 + s) * (1.0 - w1 - w2)) * (1.0 - w1) * (1.0 - w2) * (1.0 - s);
  return v >= -tol;
}

Vec2 Segment::r1() const { return {std::cos(phi0 - psi0), std::sin(phi0 - psi0)}; }
Vec2 Segment::r2() const { return {std::cos(phi0 + psi0), std::sin(phi0 + psi0)}; }
Vec2 Segment::normal() const {
  const double k = -1.0 / std::cos(psi0);
  return {k * std::cos(phi0), k * std::sin(phi0)};
}

void validate_segment(double t, double phi0, double psi0) {
  if (!(t > 0.0 && t < 1.0)) throw QubitError("segment: t must lie in (0, 1)");
  if (!(phi0 > 0.0 && phi0 < 0.5 * kPi)) throw QubitError("segment: phi0 outside (0, pi/2)");
  if (!(psi0 > 0.0 && psi0 < 0.5 * kPi)) throw QubitError("segment: psi0 outside (0, pi/2)");
}

double c1_of(double t, double phi0, double /*psi0*/, double xi1) {
  const double s = std::sin(phi0 - xi1);
  if (!(s > 0.0)) throw QubitError("c1_of: sin(phi0 - xi1) must be positive");
  return t * std::sin(phi0) / s;
}

double w1_of(double t, double phi0, double psi0, double xi1) {
  const double s = std::sin(phi0 - xi1);
  if (!(s > 0.0)) throw QubitError("w1_of: sin(phi0 - xi1) must be positive");
  return -t * std::cos(psi0) * std::sin(xi1) / s;
}

QubitEffect surrogate1(double t, double phi0, double psi0, double xi1) {
  const double c = c1_of(t, phi0, psi0, xi1);
  return {w1_of(t, phi0, psi0, xi1), {c * std::cos(xi1), c * std::sin(xi1)}};
}

QubitEffect surrogate2(double t, double phi0, double psi0, double xi2) {
  const double ph = 0.5 * kPi - phi0;
  const double c = c1_of(t, ph, psi0, xi2);
  return {w1_of(t, ph, psi0, xi2), {c * std::sin(xi2), c * std::cos(xi2)}};
}

XiBounds xi_bounds(double t, double phi0, double psi0) {
  validate_segment(t, phi0, psi0);
  const double ph = 0.5 * kPi - phi0;
  return {xi_root(t, phi0, psi0, -1.0), xi_root(t, phi0, psi0, 1.0), xi_root(t, ph, psi0, -1.0),
          xi_root(t, ph, psi0, 1.0)};
}

std::array<double, 4> xi_residuals(double t, double phi0, double psi0, const XiBounds& b) {
  const double ph = 0.5 * kPi - phi0;
  return {1.0 - w1_of(t, phi0, psi0, b.xi1_min) - c1_of(t, phi0, psi0, b.xi1_min),
          1.0 + w1_of(t, phi0, psi0, b.xi1_max) - c1_of(t, phi0, psi0, b.xi1_max),
          1.0 - w1_of(t, ph, psi0, b.xi2_min) - c1_of(t, ph, psi0, b.xi2_min),
          1.0 + w1_of(t, ph, psi0, b.xi2_max) - c1_of(t, ph, psi0, b.xi2_max)};
}

LambdaRange lambda_bounds(const Vec2& a, const Segment& s) {
  const Vec2 n = s.normal();
  const double aa = dot2(a, a);
  if (aa > 1.0) throw QubitError("lambda_bounds: target outside the unit disc");
  const double big_a = dot2(n, n) - 1.0;
  const double an = dot2(a, n);
  // |a + w n| = 1 + w (w <= 0) and |a + w n| = 1 - w (w >= 0).
  const auto lo = quadratic_roots(big_a, 2.0 * (an - 1.0), aa - 1.0);
  const auto hi = quadratic_roots(big_a, 2.0 * (an + 1.0), aa - 1.0);
  return {lo.first, std::min(1.0, hi.second)};
}

QubitPairParams qubit_pair_params(double t, double phi0, double psi0) {
  QubitPairParams p;
  p.t = t;
  p.phi0 = phi0;
  p.psi0 = psi0;
  p.xi = xi_bounds(t, phi0, psi0);
  const Segment seg{phi0, psi0};
  p.lambda1 = lambda_bounds({t, 0.0}, seg);
  p.lambda2 = lambda_bounds({0.0, t}, seg);
  p.s1_min = surrogate1(t, phi0, psi0, p.xi.xi1_min);
  p.s2_min = surrogate2(t, phi0, psi0, p.xi.xi2_min);
  const double s = std::sin(p.xi.xi1_min + p.xi.xi2_min);
  const double w1 = p.s1_min.w, w2 = p.s2_min.w;
  p.z = (1.0 + s) * (1.0 + w1 + w2) - (1.0 - s) * w1 * w2;
  return p;
}

double z_function(double t, double phi0, double psi0) { return qubit_pair_params(t, phi0, psi0).z; }

std::string to_string(SegmentPath p) {
  switch (p) {
    case SegmentPath::AntiAligned: return "anti-aligned";
    case SegmentPath::ZSign: return "z-sign";
    case SegmentPath::BuschSearch: return "busch-search";
    case SegmentPath::Incompatible: return "incompatible";
  }
  return "incompatible";
}

SegmentVerdict analyze_segment(double t, double phi0, double psi0, bool full_search) {
  const QubitPairParams p = qubit_pair_params(t, phi0, psi0);
  SegmentVerdict v;
  v.min_margin = kInf;
  bool found = false;
  if (p.xi.xi1_min + p.xi.xi2_min <= -0.5 * kPi) {
    v.compatible = found = true;
    v.path = SegmentPath::AntiAligned;
    v.min_margin = -kInf;
    return v;
  }
  if (p.z <= 0.0) {
    v.compatible = found = true;
    v.path = SegmentPath::ZSign;
    if (!full_search) {
      v.min_margin = busch_margin(p.s1_min, p.s2_min);
      v.w1 = p.s1_min.w;
      v.w2 = p.s2_min.w;
      return v;
    }
  }

  // Surrogate pairs form the box [lambda1] x [lambda2] in (w1, w2); compatible
  // pairs form a convex subset of it. Grid search with zooming on the minimum.
  const Vec2 n = Segment{phi0, psi0}.normal();
  auto margin_at = [&](double w1, double w2) {
    const QubitEffect e1{w1, {t + w1 * n[0], w1 * n[1]}};
    const QubitEffect e2{w2, {w2 * n[0], t + w2 * n[1]}};
    return busch_margin(e1, e2);
  };
  constexpr int kGrid = 9;
  constexpr int kLevels = 12;
  double lo1 = p.lambda1.lo, hi1 = p.lambda1.hi, lo2 = p.lambda2.lo, hi2 = p.lambda2.hi;
  for (int level = 0; level < kLevels; ++level) {
    const double h1 = (hi1 - lo1) / (kGrid - 1), h2 = (hi2 - lo2) / (kGrid - 1);
    for (int i = 0; i < kGrid; ++i)
      for (int j = 0; j < kGrid; ++j) {
        const double w1 = lo1 + i * h1, w2 = lo2 + j * h2;
        const double m = margin_at(w1, w2);
        if (m < v.min_margin) {
          v.min_margin = m;
          v.w1 = w1;
          v.w2 = w2;
        }
      }
    if (v.min_margin <= 0.0 && !found) {
      v.compatible = found = true;
      v.path = SegmentPath::BuschSearch;
      if (!full_search) return v;
    }
    lo1 = std::max(p.lambda1.lo, v.w1 - 1.5 * h1);
    hi1 = std::min(p.lambda1.hi, v.w1 + 1.5 * h1);
    lo2 = std::max(p.lambda2.lo, v.w2 - 1.5 * h2);
    hi2 = std::min(p.lambda2.hi, v.w2 + 1.5 * h2);
  }
  if (!found) {
    v.compatible = false;
    v.path = SegmentPath::Incompatible;
  }
  return v;
}

S0Result segment_lp(const TheoryPtr& disc, double t, double phi0, double psi0,
                    const CompatOptions& opt) {
  validate_segment(t, phi0, psi0);
  const Segment seg{phi0, psi0};
  const auto [a, b] = mu_pair(disc, t);
  const Vec2 r1 = seg.r1(), r2 = seg.r2();
  return s0_compatible(a, b, make_state_subset({{r1[0], r1[1], 1.0}, {r2[0], r2[1], 1.0}}), opt);
}

}  // namespace gptlab
