#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <gptlab/theory.hpp>

using namespace gptlab;

namespace {

std::pair<double, double> vertex_range(const Theory& t, const Vec& e) {
  double lo = kInf, hi = -kInf;
  for (const auto& w : t.pure_states()) {
    lo = std::min(lo, t.pair(e, w));
    hi = std::max(hi, t.pair(e, w));
  }
  return {lo, hi};
}

}  // namespace

TEST(Polygon, StatesAreNormalizedAndOnTheCircle) {
  for (int n = 3; n <= 12; ++n) {
    const auto t = make_polygon(n);
    ASSERT_EQ(t->pure_states().size(), static_cast<std::size_t>(n));
    const double r = std::sqrt(1.0 / std::cos(kPi / n));
    EXPECT_NEAR(polygon_radius(n), r, 1e-15);
    for (const auto& w : t->pure_states()) {
      EXPECT_NEAR(t->pair(t->unit(), w), 1.0, 1e-14);
      EXPECT_NEAR(std::hypot(w[0], w[1]), r, 1e-14);
    }
    EXPECT_TRUE(is_state(*t, t->max_mixed()));
    EXPECT_NEAR(t->max_mixed()[0], 0.0, 1e-15);
    EXPECT_NEAR(t->max_mixed()[1], 0.0, 1e-15);
  }
}

TEST(Polygon, PureEffectsSpanTheUnitInterval) {
  for (int n = 3; n <= 12; ++n)
    for (auto rep : {Representation::Standard, Representation::Rescaled}) {
      if (rep == Representation::Rescaled && n % 2 == 1) continue;
      const auto t = make_polygon(n, rep);
      ASSERT_EQ(t->pure_effects().size(), static_cast<std::size_t>(n));
      for (const auto& e : t->pure_effects()) {
        const auto [lo, hi] = vertex_range(*t, e);
        EXPECT_NEAR(lo, 0.0, 1e-14) << "n=" << n;
        EXPECT_NEAR(hi, 1.0, 1e-14) << "n=" << n;
        const auto [flo, fhi] = t->functional_range(e);
        EXPECT_NEAR(flo, lo, 1e-14);
        EXPECT_NEAR(fhi, hi, 1e-14);
        EXPECT_TRUE(is_effect(*t, e));
      }
    }
}

TEST(Polygon, SelfDualityFlags) {
  EXPECT_TRUE(make_polygon(5)->eigenstate_admitting());
  EXPECT_TRUE(make_polygon(7)->eigenstate_admitting());
  EXPECT_FALSE(make_polygon(6)->eigenstate_admitting());
  EXPECT_TRUE(make_polygon(6, Representation::Rescaled)->eigenstate_admitting());
  EXPECT_TRUE(make_disc()->eigenstate_admitting());
  EXPECT_TRUE(make_simplex(3)->eigenstate_admitting());
}

TEST(Polygon, OddEffectsHaveVertexEigenstates) {
  for (int n : {3, 5, 7, 9}) {
    const auto t = make_polygon(n);
    for (const auto& e : t->pure_effects()) {
      const Vec w = eigenstate_of(*t, e);
      EXPECT_TRUE(is_state(*t, w));
      EXPECT_NEAR(t->pair(e, w), 1.0, 1e-12);
      const bool is_vertex = std::any_of(t->pure_states().begin(), t->pure_states().end(),
                                         [&](const Vec& v) { return max_abs_diff(v, w) < 1e-12; });
      EXPECT_TRUE(is_vertex) << "n=" << n;
    }
  }
}

TEST(Polygon, RejectsBadOrder) {
  EXPECT_THROW(make_polygon(2), TheoryError);
  EXPECT_THROW(make_simplex(0), TheoryError);
}

TEST(Disc, FunctionalRangeIsAnalytic) {
  const auto t = make_disc();
  for (const Vec& e : {Vec{0.3, -0.1, 0.5}, Vec{0.0, 0.0, 0.2}, Vec{-0.25, 0.4, 0.6}}) {
    const auto [lo, hi] = t->functional_range(e);
    const double rho = std::hypot(e[0], e[1]);
    EXPECT_NEAR(lo, e[2] - rho, 1e-14);
    EXPECT_NEAR(hi, e[2] + rho, 1e-14);
  }
  const Vec w = t->disc_state(0.7);
  EXPECT_NEAR(t->pair(t->disc_effect(0.7), w), 1.0, 1e-14);
  EXPECT_NEAR(t->pair(t->disc_effect(0.7 + kPi), w), 0.0, 1e-14);
}

TEST(Disc, CircumscribedSamplesContainTheCircle) {
  const auto t = make_disc();
  const int k = 16;
  const auto outer = t->boundary_states(k, 1.0 / std::cos(kPi / k));
  ASSERT_EQ(outer.size(), static_cast<std::size_t>(k));
  // Every edge of the circumscribed polygon is tangent to the unit circle.
  for (int i = 0; i < k; ++i) {
    const Vec& a = outer[i];
    const Vec& b = outer[(i + 1) % k];
    const double mx = 0.5 * (a[0] + b[0]), my = 0.5 * (a[1] + b[1]);
    EXPECT_NEAR(std::hypot(mx, my), 1.0, 1e-12);
  }
}

TEST(Simplex, ClassicalStructure) {
  const auto t = make_simplex(4);
  EXPECT_EQ(t->pure_states().size(), 4u);
  for (const auto& w : t->pure_states()) EXPECT_NEAR(t->pair(t->unit(), w), 1.0, 1e-15);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(t->pair(t->pure_effects()[i], t->pure_states()[j]), i == j ? 1.0 : 0.0, 1e-15);
}

TEST(Membership, StatesAndEffects) {
  const auto t = make_polygon(4);
  EXPECT_FALSE(is_state(*t, {5.0, 0.0, 1.0}));
  EXPECT_FALSE(is_state(*t, {0.0, 0.0, 2.0}));
  EXPECT_TRUE(is_effect(*t, t->unit()));
  EXPECT_FALSE(is_effect(*t, scale(t->unit(), 1.5)));
}
