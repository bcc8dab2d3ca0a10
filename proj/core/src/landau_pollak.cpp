#include <algorithm>
#include <cmath>

#include "gptlab/uncertainty.hpp"

namespace gptlab {

double lp_gamma(const Observable& f, const Observable& g) {
  if (!f.theory || !g.theory || f.theory->dim() != g.theory->dim())
    throw UncertaintyError("lp_gamma: theory mismatch");
  const Theory& t = *f.theory;
  double best = -kInf;
  for (const auto& fa : f.effects)
    for (const auto& gb : g.effects) best = std::max(best, t.functional_range(add(fa, gb)).second);
  return best;
}

double gamma_closed_form(int n, int i) {
  if (n < 3 || i <= 0 || 2 * i >= n)
    throw UncertaintyError("gamma_closed_form: need n >= 3 and 0 < i < n / 2");
  const double r2 = 1.0 / std::cos(kPi / n);
  const double half = kPi * i / n;  // theta' / 2
  const double c = std::cos(half);
  const double s = std::sin(half);
  if (n % 2 == 0) {
    const bool even_i = i % 2 == 0;
    if (n % 4 == 0) return even_i ? std::max(1.0 + c, 1.0 + s) : std::max(1.0 + r2 * c, 1.0 + r2 * s);
    return even_i ? std::max(1.0 + c, 1.0 + r2 * s) : std::max(1.0 + r2 * c, 1.0 + s);
  }
  const double side = 1.0 + s / std::cos(kPi / (2.0 * n));
  const double k = 2.0 / (1.0 + r2);
  const double lead = i % 2 == 0 ? r2 * k + k * c : r2 * k + r2 * k * c;
  return std::max(lead, side);
}

double gamma_disc(double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw UncertaintyError("gamma_disc: theta outside (0, pi)");
  return std::max(1.0 + std::cos(0.5 * theta), 1.0 + std::sin(0.5 * theta));
}

double gamma_limit_2pi3() { return 1.0 + std::sqrt(3.0) / 2.0; }

GammaResult landau_pollak_gamma(int n, int i) {
  GammaResult r;
  r.n = n;
  r.i = i;
  r.closed_form = gamma_closed_form(n, i);
  r.theta = 2.0 * kPi * i / n;
  const TheoryPtr t = make_polygon(n);
  r.numeric = lp_gamma(binary_ideal(t, i), binary_ideal(t, 0));
  if (std::abs(r.numeric - r.closed_form) > 1e-9)
    throw NumericError("landau_pollak_gamma: closed form disagrees with numeric maximum at n = " +
                       std::to_string(n) + ", i = " + std::to_string(i));
  return r;
}

GammaResult landau_pollak_gamma_disc(double theta) {
  GammaResult r;
  r.theta = theta;
  r.closed_form = gamma_disc(theta);
  const TheoryPtr t = make_disc();
  r.numeric = lp_gamma(disc_binary(t, theta), disc_binary(t, 0.0));
  if (std::abs(r.numeric - r.closed_form) > 1e-9)
    throw NumericError("landau_pollak_gamma_disc: closed form disagrees with numeric maximum");
  return r;
}

double entropic_pur_bound(double gamma) {
  if (!(gamma > 0.0 && gamma <= 2.0 + 1e-12))
    throw UncertaintyError("entropic_pur_bound: gamma outside (0, 2]");
  return std::max(0.0, -2.0 * std::log(gamma / 2.0));
}

namespace {

// States w = c + x b1 + y b2 of a theory with a two-dimensional state space.
struct Plane {
  Vec c, b1, b2;

  Vec point(double x, double y) const { return axpy(axpy(c, x, b1), y, b2); }
};

Plane plane_of(const Theory& t) {
  Plane p;
  p.c = t.max_mixed();
  std::vector<Vec> basis;
  for (const auto& w : t.pure_states()) {
    Vec v = sub(w, p.c);
    for (const auto& b : basis) v = axpy(v, -dot(v, b), b);
    const double nv = norm(v);
    if (nv > 1e-9) basis.push_back(scale(v, 1.0 / nv));
    if (basis.size() > 2) break;
  }
  if (basis.size() != 2)
    throw UncertaintyError("majorization_vector: state space must be two-dimensional");
  p.b1 = basis[0];
  p.b2 = basis[1];
  return p;
}

// sum over cells of f_a(w) g_b(w) as a quadratic in (x, y):
// q = k0 + kx x + ky y + kxx x^2 + kxy x y + kyy y^2.
struct Quadratic {
  double k0 = 0, kx = 0, ky = 0, kxx = 0, kxy = 0, kyy = 0;

  double operator()(double x, double y) const {
    return k0 + kx * x + ky * y + kxx * x * x + kxy * x * y + kyy * y * y;
  }
};

Quadratic product_sum(const Theory& t, const Plane& pl, const std::vector<std::pair<Vec, Vec>>& cells) {
  Quadratic q;
  for (const auto& [fa, gb] : cells) {
    const double f0 = t.pair(fa, pl.c), f1 = t.pair(fa, pl.b1), f2 = t.pair(fa, pl.b2);
    const double g0 = t.pair(gb, pl.c), g1 = t.pair(gb, pl.b1), g2 = t.pair(gb, pl.b2);
    q.k0 += f0 * g0;
    q.kx += f0 * g1 + f1 * g0;
    q.ky += f0 * g2 + f2 * g0;
    q.kxx += f1 * g1;
    q.kxy += f1 * g2 + f2 * g1;
    q.kyy += f2 * g2;
  }
  return q;
}

// Plane coordinates of a state.
std::pair<double, double> coords(const Plane& pl, const Vec& w) {
  const Vec v = sub(w, pl.c);
  return {dot(v, pl.b1), dot(v, pl.b2)};
}

double max_over_states(const Theory& t, const Plane& pl, const Quadratic& q, int samples) {
  double best = -kInf;
  // Interior stationary point.
  const double det = 4.0 * q.kxx * q.kyy - q.kxy * q.kxy;
  if (std::abs(det) > 1e-14) {
    const double x = (-2.0 * q.kyy * q.kx + q.kxy * q.ky) / det;
    const double y = (-2.0 * q.kxx * q.ky + q.kxy * q.kx) / det;
    if (is_state(t, pl.point(x, y), 1e-12)) best = std::max(best, q(x, y));
  }
  if (t.kind() == TheoryKind::Disc) {
    const auto [cx, cy] = coords(pl, t.disc_state(0.0));
    const auto [sx, sy] = coords(pl, t.disc_state(0.5 * kPi));
    auto on_circle = [&](double th) {
      return q(std::cos(th) * cx + std::sin(th) * sx, std::cos(th) * cy + std::sin(th) * sy);
    };
    const double h = 2.0 * kPi / samples;
    int arg = 0;
    double top = -kInf;
    for (int k = 0; k < samples; ++k) {
      const double v = on_circle(k * h);
      if (v > top) {
        top = v;
        arg = k;
      }
    }
    // Golden-section refinement on the bracketing arc.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = (arg - 1) * h, b = (arg + 1) * h;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double v1 = on_circle(x1), v2 = on_circle(x2);
    for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
      if (v1 < v2) {
        a = x1;
        x1 = x2;
        v1 = v2;
        x2 = a + phi * (b - a);
        v2 = on_circle(x2);
      } else {
        b = x2;
        x2 = x1;
        v2 = v1;
        x1 = b - phi * (b - a);
        v1 = on_circle(x1);
      }
    }
    return std::max({best, top, v1, v2});
  }
  // Polytopes: every segment between pure states contains the edges; on a
  // segment q is quadratic in the parameter.
  const auto& ps = t.pure_states();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto [x0, y0] = coords(pl, ps[i]);
    best = std::max(best, q(x0, y0));
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const auto [x1, y1] = coords(pl, ps[j]);
      const double dx = x1 - x0, dy = y1 - y0;
      const double aa = q.kxx * dx * dx + q.kxy * dx * dy + q.kyy * dy * dy;
      const double bb = q.kx * dx + q.ky * dy + 2.0 * q.kxx * x0 * dx + q.kxy * (x0 * dy + y0 * dx) +
                        2.0 * q.kyy * y0 * dy;
      if (aa < 0.0) {
        const double s = -bb / (2.0 * aa);
        if (s > 0.0 && s < 1.0) best = std::max(best, q(x0 + s * dx, y0 + s * dy));
      }
    }
  }
  return best;
}

}  // namespace

MajorizationResult majorization_vector(const Observable& f, const Observable& g, int boundary_samples) {
  if (!f.theory || !g.theory || f.theory->dim() != g.theory->dim())
    throw UncertaintyError("majorization_vector: theory mismatch");
  const std::size_t na = f.size(), nb = g.size();
  if (na * nb > 16) throw UncertaintyError("majorization_vector: |A||B| exceeds 16");
  if (boundary_samples < 8) throw UncertaintyError("majorization_vector: too few boundary samples");
  const Theory& t = *f.theory;
  for (const auto* o : {&f, &g})
    for (const auto& e : o->effects)
      if (eigenstates(t, e).empty())
        throw UncertaintyError("majorization_vector: ideal observables required");

  const Plane pl = plane_of(t);
  const std::size_t cells = na * nb;
  const std::size_t d = std::max(na, nb);
  MajorizationResult res;
  for (std::size_t k = 1; k <= d; ++k) {
    double rk = -kInf;
    // Enumerate k-subsets of the cells through bit masks.
    for (unsigned mask = 0; mask < (1u << cells); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::pair<Vec, Vec>> chosen;
      for (std::size_t c = 0; c < cells; ++c)
        if (mask & (1u << c)) chosen.emplace_back(f[c / nb], g[c % nb]);
      rk = std::max(rk, max_over_states(t, pl, product_sum(t, pl, chosen), boundary_samples));
    }
    res.R.push_back(std::min(rk, 1.0));
  }
  res.r.assign(d * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) res.r[k] = res.R[k] - (k == 0 ? 0.0 : res.R[k - 1]);
  res.gamma = lp_gamma(f, g);
  res.r1_bound = 0.25 * res.gamma * res.gamma;
  res.r1_within_bound = res.R.front() <= res.r1_bound + 1e-12;
  res.entropy_bound = shannon_entropy(res.r, EntropyBase::Nats, 1e-9);
  return res;
}

}  // namespace gptlab
