#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/theory.hpp"

namespace gptlab {

// Pairwise outcome distances: symmetric, zero diagonal, triangle inequality.
using Metric = Matrix;

Metric discrete_metric(std::size_t k);
// d(a, b) = min(|a - b|, k - |a - b|)
Metric cyclic_metric(std::size_t k);
void validate_metric(const Metric& d, double tol = 1e-12);

class ObservableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Observable {
  TheoryPtr theory;
  std::vector<Vec> effects;
  std::vector<std::string> labels;
  std::optional<Metric> metric;

  std::size_t size() const { return effects.size(); }
  const Vec& operator[](std::size_t a) const { return effects[a]; }
  // The attached metric, or the discrete one.
  Metric outcome_metric() const;
};

// Validates: effects sum to the unit (1e-10 per coordinate), each is an effect,
// metric is well formed. Labels default to "0", "1", ...
Observable make_observable(TheoryPtr t, std::vector<Vec> effects,
                           std::vector<std::string> labels = {},
                           std::optional<Metric> metric = std::nullopt);

struct IdealEnumeration {
  std::vector<Observable> observables;
  // Valid two-term sums of extreme effects that are neither the unit, an
  // extreme effect, nor a complement of one. Expected empty for polygons.
  std::vector<std::pair<int, int>> unexpected_sums;
};

IdealEnumeration enumerate_ideal_observables(const TheoryPtr& t);
std::vector<Observable> ideal_observables(const TheoryPtr& t);

// Binary ideal observable {e_i, u - e_i} built from extreme effect i.
Observable binary_ideal(const TheoryPtr& t, int i);
// Disc only: {e(th), u - e(th)}.
Observable disc_binary(const TheoryPtr& t, double th);

// lambda * f + (1 - lambda) * {u/2, u/2}
Observable fuzz(const Observable& f, double lambda);

// Outcome probabilities; entries are clipped into [0, 1] within 1e-6 and the
// vector renormalized, anything further out throws.
Vec measure(const Observable& f, const Vec& state);

struct JointObservable {
  TheoryPtr theory;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Vec> cells;  // row-major, cells[a * cols + b]

  const Vec& at(std::size_t a, std::size_t b) const { return cells[a * cols + b]; }
  Vec& at(std::size_t a, std::size_t b) { return cells[a * cols + b]; }
};

JointObservable make_joint(TheoryPtr t, std::size_t rows, std::size_t cols,
                           std::vector<Vec> cells);
std::pair<Observable, Observable> marginals(const JointObservable& j);
// m_ab = f_a(w0) g_b: marginals are (constant statistics of f at w0, g).
JointObservable product_joint(const Observable& f, const Observable& g, const Vec& w0);

// Largest violation of the observable conditions (sum and effect range).
double observable_violation(const Observable& f);
double joint_violation(const JointObservable& j);

}  // namespace gptlab
