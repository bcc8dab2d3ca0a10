#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <gptlab/numerics.hpp>

using namespace gptlab;

namespace {

// Brute-force optimum of max c.x over {A x <= b} in two variables: every
// feasible pairwise intersection of constraint lines is a candidate vertex.
double vertex_enumeration_max(const Matrix& A, const Vec& b, const Vec& c) {
  double best = -kInf;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      const double det = A[i][0] * A[j][1] - A[i][1] * A[j][0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (b[i] * A[j][1] - A[i][1] * b[j]) / det;
      const double y = (A[i][0] * b[j] - b[i] * A[j][0]) / det;
      bool ok = true;
      for (std::size_t k = 0; k < A.size(); ++k)
        if (A[k][0] * x + A[k][1] * y > b[k] + 1e-9) ok = false;
      if (ok) best = std::max(best, c[0] * x + c[1] * y);
    }
  return best;
}

}  // namespace

TEST(LinearProgram, SmallKnownOptimum) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {3.0, 2.0};
  lp.add_le({1.0, 1.0}, 4.0);
  lp.add_le({1.0, 3.0}, 6.0);
  lp.add_le({1.0, 0.0}, 3.0);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 11.0, 1e-12);
  EXPECT_NEAR(r.x[0], 3.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
}

TEST(LinearProgram, MatchesVertexEnumerationOnRandomPolygons) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix A;
    Vec b;
    // Bounded: a box plus random cuts that keep the origin feasible.
    for (auto row : {Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}, Vec{0, -1}}) {
      A.push_back(row);
      b.push_back(3.0);
    }
    for (int k = 0; k < 6; ++k) {
      A.push_back({normal(rng), normal(rng)});
      b.push_back(unif(rng));
    }
    const Vec c{normal(rng), normal(rng)};
    LinearProgram lp;
    lp.num_vars = 2;
    lp.lower = {-kInf, -kInf};
    lp.objective = c;
    for (std::size_t i = 0; i < A.size(); ++i) lp.add_le(A[i], b[i]);
    const auto r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(r.value, vertex_enumeration_max(A, b, c), 1e-8) << "trial " << trial;
    EXPECT_LE(r.max_violation, 1e-9);
  }
}

TEST(LinearProgram, MinimizeWithEqualityAndBounds) {
  // min x + 2y + 3z s.t. x + y + z = 1, y >= 0.2, z >= 0.1 (as lower bounds)
  LinearProgram lp;
  lp.num_vars = 3;
  lp.maximize = false;
  lp.objective = {1.0, 2.0, 3.0};
  lp.lower = {0.0, 0.2, 0.1};
  lp.add_eq({1.0, 1.0, 1.0}, 1.0);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 0.7 + 0.4 + 0.3, 1e-12);
}

TEST(LinearProgram, DetectsInfeasibility) {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.add_le({1.0}, 1.0);
  lp.add_ge({1.0}, 2.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(LinearProgram, DetectsUnboundedness) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1.0, 1.0};
  lp.add_le({1.0, -1.0}, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(LinearProgram, FeasibilityOnlyReportsFeasible) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.lower = {-kInf, -kInf};
  lp.add_eq({1.0, 1.0}, -3.0);
  lp.add_le({1.0, 0.0}, -5.0);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Feasible);
  EXPECT_NEAR(r.x[0] + r.x[1], -3.0, 1e-12);
  EXPECT_LE(r.x[0], -5.0 + 1e-12);
}

TEST(LinearProgram, RejectsMalformedInput) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.add_le({1.0}, 1.0);
  EXPECT_THROW(solve_lp(lp), NumericError);
  LinearProgram nan;
  nan.num_vars = 1;
  nan.add_le({std::nan("")}, 1.0);
  EXPECT_THROW(solve_lp(nan), NumericError);
  LinearProgram ok;
  ok.num_vars = 1;
  EXPECT_THROW(solve_lp(ok, 0.0), NumericError);
}

TEST(LinearProgram, DegenerateProblemTerminates) {
  // Many redundant constraints through the same vertex: Bland's rule must not cycle.
  LinearProgram lp;
  lp.num_vars = 3;
  lp.objective = {1.0, 1.0, 1.0};
  for (int k = 1; k <= 20; ++k) lp.add_le({1.0, 1.0 / k, 1.0 / (k * k)}, 1.0);
  lp.add_le({0.0, 1.0, 0.0}, 0.0);
  lp.add_le({0.0, 0.0, 1.0}, 0.0);
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(Bisection, FindsRoot) {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-11);
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-9), NumericError);
}

TEST(Bisection, PredicateBracketContainsBoundary) {
  const double edge = 0.3141;
  const auto tr = bisect_predicate([&](double x) { return x <= edge; }, 0.0, 1.0, 1e-6);
  EXPECT_LE(tr.lo, edge);
  EXPECT_GT(tr.hi, edge);
  EXPECT_LE(tr.hi - tr.lo, 1e-6);
  EXPECT_FALSE(tr.steps.empty());
}

TEST(Entropy, UniformAndBits) {
  EXPECT_NEAR(shannon_entropy({0.25, 0.25, 0.25, 0.25}), std::log(4.0), 1e-15);
  EXPECT_NEAR(shannon_entropy({0.25, 0.25, 0.25, 0.25}, EntropyBase::Bits), 2.0, 1e-15);
  EXPECT_EQ(shannon_entropy({1.0, 0.0}), 0.0);
  EXPECT_NEAR(binary_entropy(0.3), shannon_entropy({0.3, 0.7}), 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
}

TEST(Entropy, ClipsTinyNegativesAndRejectsLargeOnes) {
  EXPECT_NEAR(shannon_entropy({0.5 + 1e-12, 0.5, -1e-12}), std::log(2.0), 1e-10);
  EXPECT_THROW(shannon_entropy({0.6, 0.6, -0.2}), NumericError);
}

TEST(Entropy, ExpMinusEntropyBoundedByLargestProbability) {
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> ex(1.0);
  for (int trial = 0; trial < 500; ++trial) {
    Vec p(2 + trial % 6);
    double s = 0.0;
    for (double& x : p) s += (x = ex(rng));
    for (double& x : p) x /= s;
    const double pmax = *std::max_element(p.begin(), p.end());
    EXPECT_LE(std::exp(-shannon_entropy(p)), pmax + 1e-12);
    EXPECT_LE(shannon_entropy(p), std::log(static_cast<double>(p.size())) + 1e-12);
  }
}

TEST(DenseHelpers, RankAndArithmetic) {
  EXPECT_EQ(matrix_rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}), 2);
  EXPECT_EQ(matrix_rank({{1, 0}, {0, 1}}), 2);
  EXPECT_DOUBLE_EQ(dot({1, 2}, {3, 4}), 11.0);
  EXPECT_EQ(axpy({1, 1}, 2.0, {1, -1}), (Vec{3, -1}));
  EXPECT_DOUBLE_EQ(max_abs_diff({1, 2}, {1.5, 1}), 1.0);
  EXPECT_FALSE(all_finite({1.0, kInf}));
}
