#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include <gptlab/uncertainty.hpp>

using namespace gptlab;

namespace {

// A linear functional on a polygon peaks at a vertex, so the bound is the
// best vertex value of max_a f_a + max_b g_b.
double vertex_gamma(const Observable& f, const Observable& g) {
  const Theory& t = *f.theory;
  double best = -kInf;
  for (const auto& w : t.pure_states()) {
    double mf = 0.0, mg = 0.0;
    for (const auto& e : f.effects) mf = std::max(mf, t.pair(e, w));
    for (const auto& e : g.effects) mg = std::max(mg, t.pair(e, w));
    best = std::max(best, mf + mg);
  }
  return best;
}

}  // namespace

TEST(LandauPollak, ClosedFormsMatchVertexOracle) {
  for (int n = 3; n <= 24; ++n) {
    const auto t = make_polygon(n);
    for (int i = 1; 2 * i < n; ++i) {
      const double oracle = vertex_gamma(binary_ideal(t, i), binary_ideal(t, 0));
      EXPECT_NEAR(gamma_closed_form(n, i), oracle, 1e-12) << "n=" << n << " i=" << i;
      const auto g = landau_pollak_gamma(n, i);
      EXPECT_NEAR(g.numeric, oracle, 1e-9);
      EXPECT_NEAR(g.theta, 2.0 * kPi * i / n, 1e-15);
    }
  }
}

TEST(LandauPollak, SquareFromEvenTable) {
  // n = 4, i = 1: r^2 = sqrt(2), theta'/2 = pi/4, so 1 + sqrt(2) cos(pi/4) = 2.
  EXPECT_NEAR(gamma_closed_form(4, 1), 2.0, 1e-15);
}

TEST(LandauPollak, DiscValues) {
  EXPECT_NEAR(gamma_disc(kPi / 2), 1.0 + 1.0 / std::sqrt(2.0), 1e-15);
  for (double th : {0.3, 1.0, 2.0, 2.9}) {
    const auto g = landau_pollak_gamma_disc(th);
    EXPECT_NEAR(g.numeric, std::max(1.0 + std::cos(th / 2), 1.0 + std::sin(th / 2)), 1e-9);
  }
  EXPECT_THROW(gamma_disc(0.0), UncertaintyError);
}

TEST(LandauPollak, ThreeMSeries) {
  EXPECT_NEAR(landau_pollak_gamma(3, 1).numeric, 2.0, 1e-9);
  EXPECT_NEAR(landau_pollak_gamma(6, 2).numeric, 2.0, 1e-9);
  for (int m = 1; m <= 8; ++m) {
    const auto g = landau_pollak_gamma(3 * m, m);
    EXPECT_NEAR(g.theta, 2.0 * kPi / 3.0, 1e-15);
    EXPECT_GE(g.numeric, gamma_limit_2pi3() - 1e-9);
  }
  EXPECT_NEAR(gamma_limit_2pi3(), gamma_disc(2.0 * kPi / 3.0), 1e-15);
}

TEST(LandauPollak, EntropicBound) {
  EXPECT_EQ(entropic_pur_bound(2.0), 0.0);
  EXPECT_NEAR(entropic_pur_bound(1.0), 2.0 * std::log(2.0), 1e-15);
  EXPECT_THROW(entropic_pur_bound(2.5), UncertaintyError);
}

TEST(Majorization, DiscMutuallyUnbiasedPair) {
  const auto disc = make_disc();
  const auto m = majorization_vector(disc_binary(disc, 0.0), disc_binary(disc, kPi / 2));
  const double gamma = 1.0 + 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(m.gamma, gamma, 1e-9);
  EXPECT_NEAR(m.R[0], gamma * gamma / 4.0, 1e-9);
  EXPECT_TRUE(m.r1_within_bound);
}

TEST(Majorization, VectorIsAProbabilityDistribution) {
  for (const auto& t : {make_polygon(5), make_polygon(6, Representation::Rescaled), make_polygon(8)}) {
    const auto m = majorization_vector(binary_ideal(t, 1), binary_ideal(t, 0));
    ASSERT_EQ(m.r.size(), 4u);
    for (std::size_t k = 1; k < m.R.size(); ++k) EXPECT_GE(m.R[k], m.R[k - 1] - 1e-12);
    EXPECT_NEAR(m.R.back(), 1.0, 1e-12);
    for (double x : m.r) EXPECT_GE(x, -1e-12);
    EXPECT_NEAR(std::accumulate(m.r.begin(), m.r.end(), 0.0), 1.0, 1e-12);
    EXPECT_LE(m.R[0], m.r1_bound + 1e-9);
  }
}
