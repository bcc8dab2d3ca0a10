#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gptlab/numerics.hpp"

namespace gptlab {

enum class TheoryKind { Simplex, Polygon, Disc, Custom };
enum class Representation { Standard, Rescaled };

std::string to_string(TheoryKind k);
std::string to_string(Representation r);

// A finite-dimensional GPT embedded in R^{N+1}. States and effects share the
// embedding and are paired through the Gram matrix (identity for every
// built-in constructor). Immutable after construction.
class Theory {
 public:
  TheoryKind kind() const { return kind_; }
  // Outcome count for simplices, side count for polygons, 0 otherwise.
  int order() const { return order_; }
  Representation representation() const { return rep_; }
  std::size_t dim() const { return unit_.size(); }
  bool parametric() const { return kind_ == TheoryKind::Disc; }
  // Boundary sample count used by discretized searches on the disc.
  int resolution() const { return resolution_; }
  std::string name() const;

  const Vec& unit() const { return unit_; }
  const Vec& max_mixed() const { return max_mixed_; }
  const Matrix& gram() const { return gram_; }

  // e(w) = e^T G w
  double pair(const Vec& e, const Vec& w) const;

  // Finite kinds: the extreme points. Disc: `resolution` equally spaced samples.
  const std::vector<Vec>& pure_states() const { return pure_states_; }
  // Indecomposable extreme effects, index-aligned with the constructor formulas.
  const std::vector<Vec>& pure_effects() const { return pure_effects_; }

  // Disc only: pure state / extreme effect at angle th.
  Vec disc_state(double th) const;
  Vec disc_effect(double th) const;
  // Disc only: k boundary samples at the given radius (radius > 1 gives the
  // vertices of a circumscribed polygon when radius = 1/cos(pi/k)).
  std::vector<Vec> boundary_states(int k, double radius = 1.0, double phase = 0.0) const;

  // Self-dual in the active representation, so that e/<u,e> is a state for
  // every effect e.
  bool eigenstate_admitting() const;

  // Exact minimum and maximum of the affine functional e over the state space.
  std::pair<double, double> functional_range(const Vec& e) const;

 private:
  friend std::shared_ptr<const Theory> make_simplex(int d);
  friend std::shared_ptr<const Theory> make_polygon(int n, Representation rep);
  friend std::shared_ptr<const Theory> make_disc(int resolution);
  friend std::shared_ptr<const Theory> make_custom(std::vector<Vec> pure_states, Vec unit,
                                                   Matrix gram);
  Theory() = default;

  TheoryKind kind_ = TheoryKind::Custom;
  int order_ = 0;
  Representation rep_ = Representation::Standard;
  int resolution_ = 0;
  Vec unit_;
  Vec max_mixed_;
  Matrix gram_;
  bool identity_gram_ = true;
  std::vector<Vec> pure_states_;
  std::vector<Vec> pure_effects_;
};

using TheoryPtr = std::shared_ptr<const Theory>;

class TheoryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

TheoryPtr make_simplex(int d);
TheoryPtr make_polygon(int n, Representation rep = Representation::Standard);
TheoryPtr make_disc(int resolution = 256);
// Custom data is taken as given: no rescaling to the unit-norm convention.
TheoryPtr make_custom(std::vector<Vec> pure_states, Vec unit, Matrix gram = {});

// r_n = sqrt(1 / cos(pi / n))
double polygon_radius(int n);

bool is_state(const Theory& t, const Vec& v, double tol = 1e-9);
bool is_effect(const Theory& t, const Vec& v, double tol = 1e-9);

// e / <u, e> for self-dual representations.
Vec eigenstate_of(const Theory& t, const Vec& e, double tol = 1e-9);

}  // namespace gptlab
