#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <gptlab/mixing.hpp>

using namespace gptlab;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

double h2(double p) {
  auto xl = [](double x) { return x <= 0.0 ? 0.0 : x * std::log(x); };
  return -xl(p) - xl(1.0 - p);
}

struct Point {
  double x, y;
};

Point vertex(int n, int k) { return {std::cos(2.0 * kPi * k / n), std::sin(2.0 * kPi * k / n)}; }

// a + p (b - a) = c + s (d - c)
std::pair<double, double> cross(Point a, Point b, Point c, Point d) {
  const double ux = b.x - a.x, uy = b.y - a.y, vx = d.x - c.x, vy = d.y - c.y;
  const double det = ux * (-vy) - uy * (-vx);
  const double rx = c.x - a.x, ry = c.y - a.y;
  return {(rx * (-vy) - ry * (-vx)) / det, (ux * ry - uy * rx) / det};
}

// S(w_A) from the point where the line (w_0, w_A) crosses the chord (c, d):
// that point splits both as w_0 vs w_A and as c vs d.
double entropy_via_chord(int n, int c, int d) {
  const Point a = vertex(n, (n - 1) / 2), b = vertex(n, (n + 1) / 2);
  const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const auto [p, s] = cross(vertex(n, 0), mid, vertex(n, c), vertex(n, d));
  return (h2(s) - h2(p)) / p;
}

Big big_xlogx(const Big& x) { return x <= 0 ? Big(0) : Big(x * log(x)); }

Big big_q(const Big& a) {
  const Big a2 = a * a;
  return 2 * a2 * log(Big(2)) + big_xlogx(1 - 4 * a2) / 2 - big_xlogx(1 - 2 * a2);
}

Big big_r(const Big& a, int sign) {
  const Big s = sign;
  return big_xlogx(1 - 2 * s * a) - (2 - 2 * s * a) * log(1 - s * a);
}

}  // namespace

TEST(ClosedForms, MatchIndependentChordGeometry) {
  for (int n = 5; n <= 25; n += 2) {
    const double alpha = std::sin(kPi / (2.0 * n));
    const int j = n % 4 == 3 ? (n + 1) / 4 : (n - 1) / 4;
    EXPECT_NEAR(omega_a_entropy_q(alpha), entropy_via_chord(n, 1, (n + 1) / 2), 1e-12) << n;
    EXPECT_NEAR(omega_a_entropy_r(alpha, omega_a_r_sign(n)), entropy_via_chord(n, j, n - j), 1e-12)
        << n;
  }
}

TEST(ClosedForms, PentagonDiscrepancyAgainstFiftyDigits) {
  const Big alpha = sin(boost::math::constants::pi<Big>() / 10);
  const Big diff = abs(big_q(alpha) - big_r(alpha, -1));
  const auto rep = consistency_check(make_polygon(5));
  EXPECT_NEAR(rep.max_discrepancy, diff.convert_to<double>(), 1e-10);
  EXPECT_NEAR(rep.max_discrepancy, 0.0815, 1e-4);
}

TEST(ClosedForms, BoundaryValues) {
  EXPECT_EQ(omega_a_entropy_q(0.0), 0.0);
  EXPECT_EQ(omega_a_entropy_r(0.0, 1), 0.0);
  EXPECT_EQ(omega_a_entropy_r(0.0, -1), 0.0);
  // alpha = 1/2 is the triangle, where both forms give log 2.
  EXPECT_NEAR(omega_a_entropy_q(0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(omega_a_entropy_r(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_THROW(omega_a_entropy_r(0.1, 0), MixingError);
  EXPECT_EQ(omega_a_r_sign(7), 1);
  EXPECT_EQ(omega_a_r_sign(9), -1);
}

TEST(ClosedForms, EvenRatio) {
  EXPECT_NEAR(even_ratio(4), 0.0, 1e-15);
  EXPECT_NEAR(even_ratio(6), 1.0 / 3.0, 1e-15);
}

TEST(Distinguishability, PolygonAndDisc) {
  const auto p5 = make_polygon(5);
  const auto& v = p5->pure_states();
  EXPECT_TRUE(find_distinguishing_observable(p5, {v[0], v[2]}).has_value());
  EXPECT_FALSE(find_distinguishing_observable(p5, {v[0], v[1]}).has_value());
  const auto p4 = make_polygon(4);
  EXPECT_TRUE(find_distinguishing_observable(p4, {p4->pure_states()[0], p4->pure_states()[1]}));
  const auto disc = make_disc();
  EXPECT_TRUE(find_distinguishing_observable(disc, {disc->disc_state(0.3), disc->disc_state(0.3 + kPi)}));
  EXPECT_FALSE(find_distinguishing_observable(disc, {disc->disc_state(0.3), disc->disc_state(2.0)}));
}

TEST(Decompositions, CertificatesAndReconstruction) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& t : {make_polygon(5), make_polygon(6), make_polygon(9), make_disc()}) {
    for (int k = 0; k < 5; ++k) {
      // A random interior state as a convex mixture of three boundary points.
      const auto& ps = t->pure_states();
      double a = unif(rng), b = unif(rng) * (1.0 - a);
      Vec w = add(add(scale(ps[0], a), scale(ps[ps.size() / 3], b)),
                  scale(ps[2 * ps.size() / 3], 1.0 - a - b));
      const auto ds = enumerate_decompositions(t, w, 180);
      EXPECT_FALSE(ds.empty()) << t->name();
      for (const auto& d : ds) {
        EXPECT_LE(certificate_residual(d.family), 1e-9);
        Vec sum(t->dim(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < d.weights.size(); ++i) {
          sum = add(sum, scale(d.family.states[i], d.weights[i]));
          total += d.weights[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_LE(max_abs_diff(sum, w), 1e-9);
      }
    }
  }
}

TEST(Decompositions, PurePairEntropy) {
  const auto t = make_polygon(4);
  const auto& ps = t->pure_states();
  const auto cert = find_distinguishing_observable(t, {ps[0], ps[2]});
  ASSERT_TRUE(cert.has_value());
  const Decomposition d{t->max_mixed(), {{ps[0], ps[2]}, *cert}, {0.5, 0.5}, {true, true}};
  EXPECT_NEAR(entropy_of_decomposition(d), std::log(2.0), 1e-15);
  const Decomposition mixed{t->max_mixed(), {{ps[0], ps[2]}, *cert}, {0.5, 0.5}, {false, true}};
  EXPECT_THROW(entropy_of_decomposition(mixed), MixingError);
}

TEST(Consistency, Verdicts) {
  const auto tri = consistency_check(make_polygon(3), 180);
  EXPECT_TRUE(tri.consistent);
  EXPECT_LT(tri.max_discrepancy, 1e-9);
  const auto sq = consistency_check(make_polygon(4));
  EXPECT_FALSE(sq.consistent);
  EXPECT_NEAR(sq.max_discrepancy, std::log(2.0), 1e-12);
  for (int n = 5; n <= 10; ++n) {
    const auto r = consistency_check(make_polygon(n), 180);
    EXPECT_FALSE(r.consistent) << n;
    EXPECT_GT(r.max_discrepancy, 1e-3) << n;
    EXPECT_TRUE(r.certificates_verified) << n;
    EXPECT_LT(r.closed_form_residual, 1e-12) << n;
  }
  const auto disc = consistency_check(make_disc(), 180);
  EXPECT_TRUE(disc.consistent);
  ASSERT_TRUE(disc.s_max_mixed.has_value());
  EXPECT_NEAR(*disc.s_max_mixed, std::log(2.0), 1e-12);
}
