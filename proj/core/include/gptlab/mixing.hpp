#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gptlab/observable.hpp"

namespace gptlab {

class MixingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// States with an observable satisfying e_i(w_j) = delta_ij.
struct DistinguishableFamily {
  std::vector<Vec> states;
  Observable certificate;
};

// Polygons: LP over effects with the delta conditions and positivity at the
// vertices, then exact verification to `tol`. Disc: a single state, or a pair
// of antipodal pure states.
std::optional<Observable> find_distinguishing_observable(const TheoryPtr& t,
                                                         const std::vector<Vec>& states,
                                                         double tol = 1e-9);

// Largest |e_i(w_j) - delta_ij|.
double certificate_residual(const DistinguishableFamily& f);

bool is_pure_state(const Theory& t, const Vec& w, double tol = 1e-10);

struct Decomposition {
  Vec target;
  DistinguishableFamily family;
  Vec weights;
  std::vector<bool> pure;  // per component
};

// Polygon(n) or Disc. Chords through w at `granularity` angles in [0, pi),
// together with the chords through w and each vertex (polygons) or the
// diameter through w (disc); chords whose endpoints are perfectly
// distinguishable are kept. A pure w yields the trivial decomposition.
std::vector<Decomposition> enumerate_decompositions(const TheoryPtr& t, const Vec& w,
                                                    int granularity = 720);

// sum_i p_i S(w_i) - sum_i p_i log p_i, with S = 0 on pure components and
// base[i] required for every mixed component.
double entropy_of_decomposition(const Decomposition& d,
                                const std::vector<std::optional<double>>& base = {});

// Closed forms for S(w_A), w_A the midpoint of the edge opposite w_0 in an odd
// polygon, with alpha = sin(pi / 2n). The first is solved from the point where
// the line (w_0, w_A) crosses the chord (w_1, w_{(n+1)/2}), the second from
// where it crosses the chord (w_j, w_{n-j}).
double omega_a_entropy_q(double alpha);
// sign = +1 for n = 3 (mod 4), -1 for n = 1 (mod 4).
double omega_a_entropy_r(double alpha, int sign);
int omega_a_r_sign(int n);
// (cos(2 pi / n) / cos(pi / n))^2
double even_ratio(int n);

struct EntropyComparison {
  std::string label;
  double first = 0.0;
  double second = 0.0;
  double discrepancy() const;
};

struct ConsistencyReport {
  std::string theory;
  int n = 0;  // 0 for the disc
  std::vector<EntropyComparison> comparisons;
  double max_discrepancy = 0.0;
  bool consistent = false;
  std::string witness;
  // Agreement between the chord geometry and the printed closed forms.
  double closed_form_residual = 0.0;
  bool certificates_verified = false;
  int decompositions_found = 0;
  std::optional<double> s_max_mixed;  // disc only
};

ConsistencyReport consistency_check(const TheoryPtr& t, int granularity = 720);

}  // namespace gptlab
