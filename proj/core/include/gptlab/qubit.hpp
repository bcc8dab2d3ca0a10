#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/compatibility.hpp"

namespace gptlab {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

class QubitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Qubit effects restricted to the real (x, z = 0) disc of the Bloch ball:
// E = 1/2 ((1 + w) I + m . sigma). On a disc theory this is the vector
// (m_x / 2, m_y / 2, (1 + w) / 2); the state (x, y, 1) sees 1/2 (1 + w + m . r).
struct QubitEffect {
  double w = 0.0;
  Vec2 m{0.0, 0.0};
};

bool is_valid_qubit_effect(const QubitEffect& e, double tol = 1e-12);

// Binary observable {E, I - E} on a disc theory.
Observable qubit_observable(const TheoryPtr& disc, const QubitEffect& e);

// A^{t x} and A^{t y}: unbiased effects with Bloch vectors t x and t y.
std::pair<Observable, Observable> mu_pair(const TheoryPtr& disc, double t);

// |a + b| + |a - b| <= 2 for unbiased qubit effects with Bloch vectors a, b.
bool qubit_pair_compatible_closed_form(const Vec3& a, const Vec3& b);

struct BuschResult {
  bool compatible = false;
  double lhs = 0.0;  // (1 - F1^2 - F2^2)(1 - w1^2/F1^2 - w2^2/F2^2)
  double rhs = 0.0;  // (m1 . m2 - w1 w2)^2
  bool degenerate = false;  // a sharp unbiased effect (F = 0) was involved
  double margin() const { return lhs - rhs; }
};

// Joint measurability of two qubit effects (biased or not). A sharp unbiased
// effect (w = 0, |m| = 1) is compatible only with effects commuting with it.
BuschResult busch_unbiased_compatible(const QubitEffect& e1, const QubitEffect& e2,
                                      double tol = 1e-12);
// lhs - rhs of the criterion; <= 0 means compatible.
double busch_margin(const QubitEffect& e1, const QubitEffect& e2);

// Factored form at surrogates with 1 - w_i = C_i: compatible iff
// [(1 - sin S) w1 w2 - (1 + sin S)(1 - w1 - w2)] (1 - w1)(1 - w2)(1 - sin S) >= 0,
// and compatible outright when 1 - sin S = 0.
bool busch_min_form_compatible(double w1, double w2, double sum_xi, double tol = 1e-12);

// ---- boundary segments of the disc -----------------------------------------

// The chord between (cos(phi0 - psi0), sin(phi0 - psi0)) and
// (cos(phi0 + psi0), sin(phi0 + psi0)). Interior segments reduce to chords by
// projecting along their line, so chords are the only family searched.
struct Segment {
  double phi0 = 0.0;
  double psi0 = 0.0;

  Vec2 r1() const;
  Vec2 r2() const;
  // The unique n with n . r1 = n . r2 = -1.
  Vec2 normal() const;
};

void validate_segment(double t, double phi0, double psi0);

// Surrogate of A^{t x} on the segment at direction angle xi1:
// m1 = C1 (cos xi1, sin xi1), C1 = t sin phi0 / sin(phi0 - xi1),
// w1 = -t cos psi0 sin xi1 / sin(phi0 - xi1).
QubitEffect surrogate1(double t, double phi0, double psi0, double xi1);
// Surrogate of A^{t y}: m2 = C2 (sin xi2, cos xi2), obtained by phi0 -> pi/2 - phi0.
QubitEffect surrogate2(double t, double phi0, double psi0, double xi2);
double c1_of(double t, double phi0, double psi0, double xi1);
double w1_of(double t, double phi0, double psi0, double xi1);

struct XiBounds {
  double xi1_min = 0.0, xi1_max = 0.0, xi2_min = 0.0, xi2_max = 0.0;
};

// xi_min: 1 - w = C (negative root of the quadratic in sin xi);
// xi_max: 1 + w = C on [0, phi0).
XiBounds xi_bounds(double t, double phi0, double psi0);

// Residuals of the four defining identities.
std::array<double, 4> xi_residuals(double t, double phi0, double psi0, const XiBounds& b);

// The surrogates of an unbiased target a on the segment are m = a + w n with
// w in [lo, hi]; lo solves |m| = 1 + w and hi solves |m| = 1 - w.
struct LambdaRange {
  double lo = 0.0;
  double hi = 0.0;
};
LambdaRange lambda_bounds(const Vec2& a, const Segment& s);

struct QubitPairParams {
  double t = 0.0, phi0 = 0.0, psi0 = 0.0;
  XiBounds xi;
  LambdaRange lambda1, lambda2;
  QubitEffect s1_min, s2_min;  // surrogates at xi_min
  double z = 0.0;
};

QubitPairParams qubit_pair_params(double t, double phi0, double psi0);

double z_function(double t, double phi0, double psi0);

enum class SegmentPath { AntiAligned, ZSign, BuschSearch, Incompatible };
std::string to_string(SegmentPath p);

struct SegmentVerdict {
  bool compatible = false;
  SegmentPath path = SegmentPath::Incompatible;
  // Smallest Busch margin found over the surrogate box (when searched).
  double min_margin = 0.0;
  double w1 = 0.0, w2 = 0.0;  // argmin of the margin
};

// full_search keeps minimizing after a compatible pair is found so that
// min_margin ranks segments by how close they are to incompatibility.
SegmentVerdict analyze_segment(double t, double phi0, double psi0, bool full_search = false);

// Joint-measurability LP of A^{tx}, A^{ty} restricted to the chord endpoints.
S0Result segment_lp(const TheoryPtr& disc, double t, double phi0, double psi0,
                    const CompatOptions& opt = {});

// ---- incompatibility and compatibility dimension ---------------------------

struct DimensionOptions {
  int grid = 64;          // base (phi0, psi0) cells per axis, sampled at midpoints
  int refine = 4;         // subdivision factor per axis for the closest cells
  int refine_cells = 16;  // how many base cells get subdivided
  int lp_spot_checks = 32;
  double t0_tol = 1e-4;
  int jobs = 0;           // 0: hardware concurrency
  CompatOptions lp;
};

struct CellResult {
  double phi0 = 0.0, psi0 = 0.0;
  SegmentVerdict verdict;
};

struct ScanResult {
  double t = 0.0;
  int grid = 0;
  bool any_incompatible = false;
  std::vector<CellResult> incompatible;  // in scan order
  CellResult closest;                    // largest min_margin among searched cells
  int anti_aligned = 0, z_sign = 0, busch = 0;
  int cells = 0;
};

// Scans the base grid, then the refined sub-cells of the closest cells.
ScanResult scan_segments(double t, const DimensionOptions& opt);

struct SpotCheck {
  double phi0 = 0.0, psi0 = 0.0;
  bool busch_compatible = false;
  bool lp_compatible = false;
  bool lp_certified = true;
};

// chi_comp is 0 when the pair is compatible (the dimension is undefined).
struct ChiCompReport {
  int chi_comp = 0;
  int lower_witness_size = 0;        // dim aff + 1 of the compatible plane subset
  bool product_joint_valid = false;  // G(x, y) = Tr[rho0 A(x)] B(y) reproduces both
  bool disc_section_lp_compatible = false;
  bool full_space_incompatible = false;  // closed form on the Bloch ball
};

ChiCompReport verify_chi_comp(double t, const CompatOptions& opt = {});

struct DimensionReport {
  double t = 0.0;
  int chi_incomp = 0;
  int chi_comp = 0;
  StateSubset witness;  // S0 certifying chi_incomp = 2 (empty when chi_incomp = 3)
  std::optional<CellResult> witness_cell;
  ScanResult scan;
  std::vector<SpotCheck> spot_checks;
  int disagreements = 0;  // certified LP verdicts contradicting the Busch search
  ChiCompReport comp;
};

DimensionReport incompatibility_dimension_qubit(double t, const TheoryPtr& disc,
                                                const DimensionOptions& opt = {});

struct ThresholdReport {
  double t0 = 0.0;
  BisectTrace trace;
  int grid = 0;
  double t0_doubled = 0.0;  // same search on a grid twice as fine
  BisectTrace trace_doubled;
  double stability = 0.0;   // |t0 - t0_doubled|
};

// Bisection in t of "some chord is incompatible".
ThresholdReport estimate_t0(const DimensionOptions& opt = {});

}  // namespace gptlab
