#include "gptlab/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gptlab {

namespace {

void check_tuple(const std::vector<Observable>& fs) {
  if (fs.empty()) throw ObservableError("compatibility: empty tuple");
  for (const auto& f : fs) {
    if (!f.theory) throw ObservableError("compatibility: observable without theory");
    const Theory& a = *f.theory;
    const Theory& b = *fs.front().theory;
    if (&a != &b && (a.kind() != b.kind() || a.order() != b.order() || a.dim() != b.dim() ||
                     a.representation() != b.representation()))
      throw ObservableError("compatibility: theory mismatch");
  }
}

Vec gram_times(const Theory& t, const Vec& w) {
  const std::size_t d = t.dim();
  Vec out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += t.gram()[i][j] * w[j];
  return out;
}

// Joint effects m_c for every multi-index c. Positivity m_c(w) >= 0 is imposed
// on `tests`; m_c(w) <= 1 follows from sum_c m_c = u. Marginals are matched
// coordinate-wise, or only through their values on `generators` when given.
struct JointLp {
  const std::vector<Observable>& fs;
  const std::vector<Vec>* generators = nullptr;

  std::size_t cells() const {
    std::size_t c = 1;
    for (const auto& f : fs) c *= f.size();
    return c;
  }

  std::size_t index_of(std::size_t cell, std::size_t j) const {
    std::size_t stride = 1;
    for (std::size_t k = fs.size(); k-- > j + 1;) stride *= fs[k].size();
    return (cell / stride) % fs[j].size();
  }

  LpResult solve(const std::vector<Vec>& tests, double tol) const {
    const Theory& t = *fs.front().theory;
    const std::size_t d = t.dim();
    const std::size_t nc = cells();
    LinearProgram lp;
    lp.num_vars = nc * d;
    lp.lower.assign(lp.num_vars, -kInf);

    for (const auto& w : tests) {
      const Vec gw = gram_times(t, w);
      for (std::size_t c = 0; c < nc; ++c) {
        Vec row(lp.num_vars, 0.0);
        for (std::size_t k = 0; k < d; ++k) row[c * d + k] = gw[k];
        lp.add_ge(std::move(row), 0.0);
      }
    }

    if (generators == nullptr) {
      for (std::size_t j = 0; j < fs.size(); ++j) {
        // For j > 0 the last outcome follows from the others and the unit.
        const std::size_t outcomes = j == 0 ? fs[j].size() : fs[j].size() - 1;
        for (std::size_t a = 0; a < outcomes; ++a)
          for (std::size_t k = 0; k < d; ++k) {
            Vec row(lp.num_vars, 0.0);
            for (std::size_t c = 0; c < nc; ++c)
              if (index_of(c, j) == a) row[c * d + k] = 1.0;
            lp.add_eq(std::move(row), fs[j][a][k]);
          }
      }
    } else {
      for (std::size_t k = 0; k < d; ++k) {
        Vec row(lp.num_vars, 0.0);
        for (std::size_t c = 0; c < nc; ++c) row[c * d + k] = 1.0;
        lp.add_eq(std::move(row), t.unit()[k]);
      }
      for (const auto& s : *generators) {
        const Vec gs = gram_times(t, s);
        for (std::size_t j = 0; j < fs.size(); ++j)
          for (std::size_t a = 0; a + 1 < fs[j].size(); ++a) {
            Vec row(lp.num_vars, 0.0);
            for (std::size_t c = 0; c < nc; ++c)
              if (index_of(c, j) == a)
                for (std::size_t k = 0; k < d; ++k) row[c * d + k] = gs[k];
            lp.add_eq(std::move(row), t.pair(fs[j][a], s));
          }
      }
    }
    return solve_lp(lp, tol);
  }
};

std::vector<Vec> unpack(const Vec& x, std::size_t nc, std::size_t d) {
  std::vector<Vec> cells(nc, Vec(d));
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t k = 0; k < d; ++k) cells[c][k] = x[c * d + k];
  return cells;
}

CompatResult run(const JointLp& jl, const CompatOptions& opt) {
  if (!(opt.tol_lp > 0.0)) throw ObservableError("compatibility: tol_lp must be positive");
  const Theory& t = *jl.fs.front().theory;
  CompatResult res;
  LpResult lp;

  if (!t.parametric()) {
    lp = jl.solve(t.pure_states(), opt.tol_lp);
    res.compatible = lp.feasible();
    res.certified = true;
    res.resolution = static_cast<int>(t.pure_states().size());
  } else {
    const int k0 = std::max(8, opt.disc_resolution);
    const int kmax = std::max(k0, opt.disc_max_resolution);
    for (int k = k0;; k *= 2) {
      res.resolution = k;
      const LpResult inner = jl.solve(t.boundary_states(k, 1.0 / std::cos(kPi / k)), opt.tol_lp);
      if (inner.feasible()) {
        lp = inner;
        res.compatible = true;
        res.certified = true;
        break;
      }
      const LpResult outer = jl.solve(t.boundary_states(k), opt.tol_lp);
      lp = outer;
      if (!outer.feasible()) {
        res.compatible = false;
        res.certified = true;
        break;
      }
      if (2 * k > kmax) {
        res.compatible = true;
        res.certified = false;
        break;
      }
    }
  }
  res.phase1 = lp.phase1;
  if (res.compatible) res.cells = unpack(lp.x, jl.cells(), t.dim());
  return res;
}

std::vector<Observable> as_tuple(const Observable& f, const Observable& g) { return {f, g}; }

}  // namespace

CompatResult are_compatible(const std::vector<Observable>& fs, const CompatOptions& opt) {
  check_tuple(fs);
  const JointLp jl{fs};
  CompatResult res = run(jl, opt);
  if (res.compatible && fs.size() == 2)
    res.joint = JointObservable{fs[0].theory, fs[0].size(), fs[1].size(), res.cells};
  return res;
}

CompatResult are_compatible(const Observable& f, const Observable& g, const CompatOptions& opt) {
  return are_compatible(as_tuple(f, g), opt);
}

StateSubset make_state_subset(std::vector<Vec> generators, double tol) {
  if (generators.empty()) throw ObservableError("make_state_subset: empty subset");
  Matrix diffs;
  for (std::size_t i = 1; i < generators.size(); ++i) {
    if (generators[i].size() != generators[0].size())
      throw ObservableError("make_state_subset: dimension mismatch");
    diffs.push_back(sub(generators[i], generators[0]));
  }
  const int r = diffs.empty() ? 0 : matrix_rank(diffs, tol);
  return StateSubset{std::move(generators), r};
}

S0Result s0_compatible(const std::vector<Observable>& fs, const StateSubset& s0,
                       const CompatOptions& opt) {
  check_tuple(fs);
  if (s0.generators.empty()) throw ObservableError("s0_compatible: empty subset");
  for (const auto& s : s0.generators)
    if (s.size() != fs.front().theory->dim())
      throw ObservableError("s0_compatible: generator dimension mismatch");
  JointLp jl{fs};
  jl.generators = &s0.generators;
  S0Result res;
  static_cast<CompatResult&>(res) = run(jl, opt);
  if (res.compatible && fs.size() == 2) {
    JointObservable j{fs[0].theory, fs[0].size(), fs[1].size(), res.cells};
    auto [a, b] = marginals(j);
    a.labels = fs[0].labels;
    b.labels = fs[1].labels;
    res.surrogates = std::make_pair(std::move(a), std::move(b));
    res.joint = std::move(j);
  }
  return res;
}

S0Result s0_compatible(const Observable& f, const Observable& g, const StateSubset& s0,
                       const CompatOptions& opt) {
  return s0_compatible(as_tuple(f, g), s0, opt);
}

double degree_upper_bound(const Observable& f, const Observable& g) {
  const Theory& t = *f.theory;
  double best = -kInf;
  for (const auto& fa : f.effects)
    for (const auto& gb : g.effects) best = std::max(best, t.functional_range(add(fa, gb)).second);
  return best - 1.0;
}

DegreeResult degree_of_incompatibility(const Observable& f, const Observable& g, double tol,
                                       const CompatOptions& opt) {
  if (f.size() != 2 || g.size() != 2)
    throw ObservableError("degree_of_incompatibility: binary observables required");
  DegreeResult res;
  res.upper_bound = degree_upper_bound(f, g);
  auto pred = [&](double lam) {
    return are_compatible(fuzz(f, lam), fuzz(g, lam), opt).compatible;
  };
  if (pred(1.0)) {
    res.lambda = 1.0;
    res.trace.estimate = res.trace.lo = res.trace.hi = 1.0;
    res.trace.steps.emplace_back(1.0, true);
    return res;
  }
  res.trace = bisect_predicate(pred, 0.0, 1.0, tol);
  res.lambda = res.trace.estimate;
  return res;
}

int witness_bound(const std::vector<int>& outcome_counts) {
  if (outcome_counts.empty()) throw ObservableError("witness_bound: empty tuple");
  int s = 0;
  for (int m : outcome_counts) {
    if (m < 1) throw ObservableError("witness_bound: outcome count must be positive");
    s += m;
  }
  return s - static_cast<int>(outcome_counts.size()) + 1;
}

WitnessBoundReport witness_bound_check(const std::vector<Observable>& fs, const StateSubset& s0,
                                       const CompatOptions& opt) {
  WitnessBoundReport rep;
  std::vector<int> counts;
  for (const auto& f : fs) counts.push_back(static_cast<int>(f.size()));
  rep.bound = witness_bound(counts);

  auto incompatible_on = [&](const std::vector<Vec>& gens) {
    return !s0_compatible(fs, make_state_subset(gens), opt).compatible;
  };
  rep.incompatible = incompatible_on(s0.generators);
  if (!rep.incompatible) {
    rep.minimal = s0;
    rep.detail = "tuple is compatible on the supplied subset";
    return rep;
  }

  // Greedy deletion; monotonicity of subset compatibility makes the result
  // inclusion-minimal.
  std::vector<Vec> gens = s0.generators;
  for (std::size_t i = 0; i < gens.size() && gens.size() > 1;) {
    std::vector<Vec> trial = gens;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (incompatible_on(trial)) gens = std::move(trial);
    else ++i;
  }
  rep.minimal = make_state_subset(std::move(gens));
  const int size = rep.minimal.affine_dim + 1;
  rep.holds = size <= rep.bound;
  rep.detail = "minimal incompatible subset has affine dimension + 1 = " + std::to_string(size) +
               ", bound " + std::to_string(rep.bound);
  return rep;
}

}  // namespace gptlab
