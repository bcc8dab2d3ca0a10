#include "gptlab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gptlab {

void LinearProgram::add_ge(Vec coeffs, double rhs) {
  for (double& c : coeffs) c = -c;
  inequalities.push_back({std::move(coeffs), -rhs});
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Compact tableau: rows 0..m-1 constraints (A y <= b), row m the objective,
// row m+1 the phase-one objective. Column n is the artificial, column n+1 the
// right-hand side. Slacks are implicit: basis labels n..n+m-1.
class Tableau {
 public:
  Tableau(const Matrix& A, const Vec& b, const Vec& c, double eps)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(eps),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(m_ + 2, Vec(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = A[i][j];
      basis_[i] = n_ + i;
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  int pivots() const { return pivots_; }
  double phase1() const { return phase1_; }

  // Returns +inf when unbounded, -inf when infeasible, else the optimum.
  double solve(Vec& y) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      run(2);
      phase1_ = -d_[m_ + 1][n_ + 1];
      if (d_[m_ + 1][n_ + 1] < -eps_) return -kInf;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j < n_ + 1; ++j) {
          if (std::abs(d_[i][j]) <= eps_) continue;
          if (s == -1 || nonbasis_[j] < nonbasis_[s]) s = j;
        }
        if (s != -1) pivot(i, s);
      }
    }
    const bool bounded = run(1);
    y.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) y[basis_[i]] = d_[i][n_ + 1];
    return bounded ? d_[m_][n_ + 1] : kInf;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= 1e-300) continue;
      const double f = d_[i][s] * inv;
      Vec& row = d_[i];
      const Vec& pr = d_[r];
      for (int j = 0; j < n_ + 2; ++j) row[j] -= pr[j] * f;
      row[s] = pr[s] * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
    if (++pivots_ > kPivotLimit) throw NumericError("solve_lp: pivot limit exceeded");
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving row on ties.
  bool run(int phase) {
    const int x = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j) {
        if (nonbasis_[j] == -phase) continue;
        if (d_[x][j] >= -eps_) continue;
        if (s == -1 || nonbasis_[j] < nonbasis_[s]) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= eps_) continue;
        const double ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == -1 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  static constexpr int kPivotLimit = 200000;
  int m_, n_;
  double eps_;
  std::vector<int> basis_, nonbasis_;
  Matrix d_;
  int pivots_ = 0;
  double phase1_ = 0.0;
};

void check_row(const LinearRow& row, std::size_t n) {
  if (row.coeffs.size() != n) throw NumericError("solve_lp: row dimension mismatch");
  if (!all_finite(row.coeffs) || !std::isfinite(row.rhs))
    throw NumericError("solve_lp: non-finite constraint");
}

}  // namespace

LpResult solve_lp(const LinearProgram& p, double tol_lp) {
  if (!(tol_lp > 0.0)) throw NumericError("solve_lp: tol_lp must be positive");
  const std::size_t n = p.num_vars;
  if (!p.objective.empty() && p.objective.size() != n)
    throw NumericError("solve_lp: objective dimension mismatch");
  if (!all_finite(p.objective)) throw NumericError("solve_lp: non-finite objective");
  if (!p.lower.empty() && p.lower.size() != n)
    throw NumericError("solve_lp: lower-bound dimension mismatch");
  for (const auto& r : p.equalities) check_row(r, n);
  for (const auto& r : p.inequalities) check_row(r, n);

  Vec lower = p.lower.empty() ? Vec(n, 0.0) : p.lower;
  for (double l : lower)
    if (std::isnan(l) || l == kInf) throw NumericError("solve_lp: invalid lower bound");

  // Column map: finite bound -> shifted column, free -> split pair.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (std::isinf(lower[j])) neg_col[j] = cols++;
  }
  auto shift = [&](const Vec& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isinf(lower[j])) s += a[j] * lower[j];
    return s;
  };

  Matrix A;
  Vec b;
  LpResult out;
  auto push = [&](const Vec& a, double rhs, double sign) {
    Vec row(cols, 0.0);
    double scale_by = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = sign * a[j];
      row[pos_col[j]] = v;
      if (neg_col[j] >= 0) row[neg_col[j]] = -v;
      scale_by = std::max(scale_by, std::abs(v));
    }
    double r = sign * (rhs - shift(a));
    if (scale_by == 0.0) {
      if (r < -tol_lp) out.phase1 = std::max(out.phase1, -r);
      return;
    }
    for (double& v : row) v /= scale_by;
    A.push_back(std::move(row));
    b.push_back(r / scale_by);
  };
  for (const auto& r : p.inequalities) push(r.coeffs, r.rhs, 1.0);
  for (const auto& r : p.equalities) {
    push(r.coeffs, r.rhs, 1.0);
    push(r.coeffs, r.rhs, -1.0);
  }
  if (out.phase1 > 0.0) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  Vec c(cols, 0.0);
  const double sense = p.maximize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n && !p.objective.empty(); ++j) {
    c[pos_col[j]] = sense * p.objective[j];
    if (neg_col[j] >= 0) c[neg_col[j]] = -sense * p.objective[j];
  }

  Tableau tab(A, b, c, tol_lp);
  Vec y;
  const double v = tab.solve(y);
  out.pivots = tab.pivots();
  out.phase1 = tab.phase1();
  if (v == -kInf) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  out.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double xj = y[pos_col[j]];
    if (neg_col[j] >= 0) xj -= y[neg_col[j]];
    else xj += lower[j];
    out.x[j] = xj;
  }
  double viol = 0.0;
  for (const auto& r : p.inequalities) viol = std::max(viol, dot(r.coeffs, out.x) - r.rhs);
  for (const auto& r : p.equalities) viol = std::max(viol, std::abs(dot(r.coeffs, out.x) - r.rhs));
  for (std::size_t j = 0; j < n; ++j)
    if (!std::isinf(lower[j])) viol = std::max(viol, lower[j] - out.x[j]);
  out.max_violation = viol;

  if (p.objective.empty()) {
    out.status = LpStatus::Feasible;
  } else if (v == kInf) {
    out.status = LpStatus::Unbounded;
  } else {
    out.status = LpStatus::Optimal;
    out.value = dot(p.objective, out.x);
  }
  return out;
}

}  // namespace gptlab
