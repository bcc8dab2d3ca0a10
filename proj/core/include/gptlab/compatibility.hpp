#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/observable.hpp"

namespace gptlab {

struct CompatOptions {
  double tol_lp = 1e-9;
  // Disc theories: starting boundary sample count and refinement cap.
  int disc_resolution = 64;
  int disc_max_resolution = 4096;
};

// Verdict of a joint-measurability LP. For finite theories the effect
// constraints are exact. For the disc two polygonal relaxations are solved:
// positivity on a circumscribed k-gon (feasible => compatible on the disc) and
// on the inscribed k-gon (infeasible => incompatible on the disc); k doubles
// until one of them certifies. At the cap the inscribed verdict is returned
// with certified = false.
struct CompatResult {
  bool compatible = false;
  bool certified = true;
  int resolution = 0;
  double phase1 = 0.0;
  std::vector<Vec> cells;  // joint effects (multi-index, last index fastest)
  std::optional<JointObservable> joint;  // pairs only
};

CompatResult are_compatible(const Observable& f, const Observable& g,
                            const CompatOptions& opt = {});
CompatResult are_compatible(const std::vector<Observable>& fs, const CompatOptions& opt = {});

struct StateSubset {
  std::vector<Vec> generators;
  int affine_dim = 0;
};

StateSubset make_state_subset(std::vector<Vec> generators, double tol = 1e-9);

struct S0Result : CompatResult {
  // Compatible observables reproducing f and g on the subset.
  std::optional<std::pair<Observable, Observable>> surrogates;
};

// Marginal conditions imposed only at the generators; linearity extends them
// to the affine hull.
S0Result s0_compatible(const Observable& f, const Observable& g, const StateSubset& s0,
                       const CompatOptions& opt = {});
S0Result s0_compatible(const std::vector<Observable>& fs, const StateSubset& s0,
                       const CompatOptions& opt = {});

struct DegreeResult {
  double lambda = 1.0;       // largest mixing weight keeping the fuzzed pair compatible
  double upper_bound = 1.0;  // max_w (max_a f_a(w) + max_b g_b(w)) - 1
  BisectTrace trace;
};

DegreeResult degree_of_incompatibility(const Observable& f, const Observable& g,
                                       double tol = 1e-5, const CompatOptions& opt = {});
// max_w (max_a f_a(w) + max_b g_b(w)) - 1 over pure states (disc: refined boundary).
double degree_upper_bound(const Observable& f, const Observable& g);

struct WitnessBoundReport {
  int bound = 0;             // sum m_j - n + 1
  bool incompatible = false; // on the supplied subset
  StateSubset minimal;       // inclusion-minimal incompatible sub-family
  bool holds = true;
  std::string detail;
};

WitnessBoundReport witness_bound_check(const std::vector<Observable>& fs, const StateSubset& s0,
                                       const CompatOptions& opt = {});

int witness_bound(const std::vector<int>& outcome_counts);

}  // namespace gptlab
