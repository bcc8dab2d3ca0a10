#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gptlab {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

class NumericError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- small dense helpers ----------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);
// a + s * b
Vec axpy(const Vec& a, double s, const Vec& b);
double max_abs_diff(const Vec& a, const Vec& b);
bool all_finite(const Vec& a);

// Numerical rank by Gaussian elimination with partial pivoting.
int matrix_rank(Matrix rows, double tol = 1e-9);

// ---- linear programming -----------------------------------------------------

struct LinearRow {
  Vec coeffs;
  double rhs = 0.0;
};

// Variables default to x >= 0; set lower[j] = -kInf for a free variable.
struct LinearProgram {
  std::size_t num_vars = 0;
  Vec objective;  // empty: pure feasibility problem
  bool maximize = true;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;  // coeffs . x <= rhs
  Vec lower;                            // empty: all zero

  void add_eq(Vec coeffs, double rhs) { equalities.push_back({std::move(coeffs), rhs}); }
  void add_le(Vec coeffs, double rhs) { inequalities.push_back({std::move(coeffs), rhs}); }
  void add_ge(Vec coeffs, double rhs);
};

enum class LpStatus { Feasible, Infeasible, Optimal, Unbounded };

std::string to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;               // populated for Feasible / Optimal
  double value = 0.0;  // objective at x (Optimal only)
  double phase1 = 0.0; // artificial level at the end of phase one
  double max_violation = 0.0;
  int pivots = 0;

  bool feasible() const { return status == LpStatus::Feasible || status == LpStatus::Optimal; }
};

// Dense two-phase simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& p, double tol_lp = 1e-9);

// ---- root finding -----------------------------------------------------------

// Bisection on a sign change of f inside [lo, hi]. Throws when f(lo) and f(hi)
// share a strict sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

// Boundary of a monotone predicate: pred(lo) == true, pred(hi) == false.
// Returns the midpoint of the final bracket together with the bracket itself.
struct BisectTrace {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::pair<double, bool>> steps;
};
BisectTrace bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi,
                             double tol);

// ---- entropy ----------------------------------------------------------------

enum class EntropyBase { Nats, Bits };

// Negative entries down to -tol are clipped and the vector renormalized.
double shannon_entropy(const Vec& p, EntropyBase base = EntropyBase::Nats, double tol = 1e-9);

// Binary entropy h(p) in nats.
double binary_entropy(double p);

}  // namespace gptlab
