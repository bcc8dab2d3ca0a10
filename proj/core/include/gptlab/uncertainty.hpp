#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/observable.hpp"

namespace gptlab {

class UncertaintyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- preparation widths -----------------------------------------------------

// Width search result. `admissible` is false when no candidate width reaches
// the requested mass; `value` then holds the largest candidate.
struct WidthResult {
  double value = 0.0;
  bool admissible = true;
};

// Candidate widths {0} U {2 d(a, b)}, sorted and deduplicated.
std::vector<double> width_candidates(const Metric& d);

// Smallest w such that some ball O(a; w) = {x : d(x, a) <= w / 2} carries
// probability >= 1 - eps.
WidthResult overall_width(const Vec& p, const Metric& d, double eps, double tol = 1e-12);

// 1 - max_a p(a)
double localization_error(const Vec& p);

// ---- measurement errors -----------------------------------------------------

// Extreme points of the face {w : f(w) = 1}. Disc: the unique maximizer.
std::vector<Vec> eigenstates(const Theory& t, const Vec& f, double tol = 1e-9);

// Smallest w such that on every extreme eigenstate of every ideal effect f_a,
// approx assigns mass >= 1 - eps to O(a; w).
WidthResult error_bar_width(const Observable& approx, const Observable& ideal, double eps,
                            const Metric& d, double tol = 1e-12);
WidthResult error_bar_width(const Observable& approx, const Observable& ideal, double eps,
                            double tol = 1e-12);

// sup over states of max over 1-Lipschitz h of |sum_a h(a) (approx_a - ideal_a)(w)|.
double werner_measure(const Observable& approx, const Observable& ideal, const Metric& d);
double werner_measure(const Observable& approx, const Observable& ideal);

// sup over states of max_a |approx_a(w) - ideal_a(w)|.
double linf_distance(const Observable& approx, const Observable& ideal);

// Even polygons in the standard representation are mapped to the rescaled one
// (states diag(r, r, 1) w, effects diag(1/r, 1/r, 1) e); other inputs are
// returned unchanged.
Observable self_dual_form(const Observable& f);
JointObservable self_dual_form(const JointObservable& j);

// H(E | M) for p(x, m) = <e_x, m_m> / <u, u>. Requires a self-dual
// representation; see self_dual_form.
double entropic_noise(const Observable& approx, const Observable& ideal);

// ---- Landau-Pollak bounds ---------------------------------------------------

// max over states of max_a f_a + max_b g_b.
double lp_gamma(const Observable& f, const Observable& g);

// Closed forms for the pair (F_i, G_0) of binary ideal observables of
// Polygon(n), 0 < i < n / 2, and for the disc at angle theta in (0, pi).
double gamma_closed_form(int n, int i);
double gamma_disc(double theta);
// 1 + sqrt(3) / 2
double gamma_limit_2pi3();

struct GammaResult {
  int n = 0;  // 0 for the disc
  int i = 0;
  double theta = 0.0;
  double numeric = 0.0;
  double closed_form = 0.0;
};

// Throws NumericError when numeric and closed form differ by more than 1e-9.
GammaResult landau_pollak_gamma(int n, int i);
GammaResult landau_pollak_gamma_disc(double theta);

// -2 log(gamma / 2), gamma in (0, 2].
double entropic_pur_bound(double gamma);

struct MajorizationResult {
  std::vector<double> R;  // R_1 .. R_d
  Vec r;                  // (R_1, R_2 - R_1, ..., 0, ...), length d^2
  double gamma = 0.0;
  double r1_bound = 0.0;  // gamma^2 / 4
  bool r1_within_bound = true;
  double entropy_bound = 0.0;  // H(r)
};

// Requires ideal observables on a theory whose state space is two-dimensional
// and |A| |B| <= 16.
MajorizationResult majorization_vector(const Observable& f, const Observable& g,
                                       int boundary_samples = 720);

// ---- measurement uncertainty from preparation uncertainty -------------------

struct MurReport {
  Representation representation = Representation::Standard;
  double eps1 = 0.0, eps2 = 0.0;

  // Error-bar witness m_ab / <u, m_ab> maximizing the combined ball masses.
  std::size_t errbar_a = 0, errbar_b = 0;
  Vec errbar_state;
  double errbar_f = 0.0, errbar_g = 0.0;  // error-bar widths at eps1, eps2
  double width_f = 0.0, width_g = 0.0;    // overall widths at eps1 + eps2
  double werner_f = 0.0, werner_g = 0.0;

  // l-infinity witness maximizing f_a + g_b on the normalized cell.
  std::size_t linf_a = 0, linf_b = 0;
  Vec linf_state;
  double linf_sum = 0.0;
  double le_sum = 0.0;

  double noise_sum = 0.0;
  double gamma = 0.0;
  double entropic_bound = 0.0;

  // Smallest (lhs - rhs) over the checked inequalities.
  double min_slack = 0.0;
  std::string worst;
  bool holds(double tol = 1e-9) const { return min_slack >= -tol; }
};

// Requires eps1, eps2 in [0, 1] with eps1 + eps2 <= 1, and joint marginals on
// the outcome sets of f and g. Zero-mass cells are skipped.
MurReport theorem_witness_state(const JointObservable& joint, const Observable& f,
                                const Observable& g, double eps1, double eps2);

// Vertex of {joint observables on A x B} for a random linear objective, mixed
// with a second such vertex at a random weight. Disc positivity is imposed on
// a circumscribed polygon, which keeps every sample valid.
JointObservable random_joint(const Observable& f, const Observable& g, std::mt19937_64& rng);

// The noisy joint of the unbiased disc pair along x and y:
// m_ab = (lambda a / 4, lambda b / 4, 1 / 4), valid for lambda <= 1 / sqrt(2).
JointObservable mu_fuzzy_joint(const TheoryPtr& disc, double lambda);

struct MurSweep {
  int trials = 0;
  int violations = 0;
  double min_slack = kInf;
  std::optional<MurReport> worst;
  std::optional<JointObservable> worst_joint;
  // (2 / eps) D_W - W_eps over fuzzed copies of f at random lambda.
  double werner_link_min_slack = kInf;
  int werner_link_violations = 0;
};

MurSweep mur_property_sweep(const Observable& f, const Observable& g, int trials,
                            std::uint64_t seed, double tol = 1e-9,
                            const std::vector<double>& link_eps = {0.1, 0.25, 0.5});

}  // namespace gptlab
