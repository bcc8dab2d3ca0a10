#include <algorithm>
#include <cmath>

#include "gptlab/numerics.hpp"

namespace gptlab {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw NumericError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec add(const Vec& a, const Vec& b) { return axpy(a, 1.0, b); }
Vec sub(const Vec& a, const Vec& b) { return axpy(a, -1.0, b); }

Vec scale(const Vec& a, double s) {
  Vec r(a);
  for (double& v : r) v *= s;
  return r;
}

Vec axpy(const Vec& a, double s, const Vec& b) {
  if (a.size() != b.size()) throw NumericError("axpy: dimension mismatch");
  Vec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * b[i];
  return r;
}

double max_abs_diff(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw NumericError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool all_finite(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

int matrix_rank(Matrix rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (std::abs(rows[i][c]) > std::abs(rows[piv][c])) piv = i;
    if (std::abs(rows[piv][c]) <= tol) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const double f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
    ++rank;
  }
  return rank;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0) || !(lo < hi)) throw NumericError("bisect: need lo < hi and tol > 0");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericError("bisect: endpoints share a sign");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BisectTrace bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi,
                             double tol) {
  if (!(tol > 0.0) || !(lo < hi)) throw NumericError("bisect_predicate: bad bracket");
  BisectTrace tr;
  const bool plo = pred(lo);
  const bool phi = pred(hi);
  tr.steps.emplace_back(lo, plo);
  tr.steps.emplace_back(hi, phi);
  if (!plo || phi) throw NumericError("bisect_predicate: predicate must flip true -> false");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool pm = pred(mid);
    tr.steps.emplace_back(mid, pm);
    (pm ? lo : hi) = mid;
  }
  tr.lo = lo;
  tr.hi = hi;
  tr.estimate = 0.5 * (lo + hi);
  return tr;
}

double shannon_entropy(const Vec& p, EntropyBase base, double tol) {
  if (p.empty()) throw NumericError("shannon_entropy: empty distribution");
  Vec q(p);
  double sum = 0.0;
  for (double& v : q) {
    if (!std::isfinite(v) || v < -tol) throw NumericError("shannon_entropy: negative entry");
    v = std::max(v, 0.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol * static_cast<double>(q.size()))
    throw NumericError("shannon_entropy: distribution not normalized");
  double h = 0.0;
  for (double v : q) {
    const double pv = v / sum;
    if (pv > 0.0) h -= pv * std::log(pv);
  }
  if (base == EntropyBase::Bits) h /= std::log(2.0);
  return std::max(h, 0.0);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

}  // namespace gptlab
