#pragma once

#include <utility>
#include <vector>

#include "coxpack/orbit.hpp"

namespace coxpack {

// Closed round ball in R^dim, or the closed complement of an open ball when
// the curvature is negative, or a closed half-space {p : p.normal <= offset}
// when the curvature is zero. `source` is the generating unit space-like
// vector after past-normalization.
struct Ball {
  int dim = 0;
  Eigen::VectorXd center;
  double curvature = 0.0;
  Eigen::VectorXd normal;
  double offset = 0.0;
  Eigen::VectorXd source;

  bool is_halfspace() const { return curvature == 0.0; }
  double radius() const { return 1.0 / std::abs(curvature); }
};

struct PairRelation {
  enum Kind { Disjoint, Tangent, Overlap, HeavyOverlap, Contained };
  Kind kind = Disjoint;
  double value = 0.0;
};

const char* to_string(PairRelation::Kind k);

struct PackingReport {
  long long ball_count = 0;
  long long histogram[5] = {0, 0, 0, 0, 0};  // indexed by PairRelation::Kind
  bool is_packing = false;
  long long future_directed = 0;
  std::vector<std::pair<int, int>> violations;  // capped
};

// Frame whose last Minkowski axis is the form's time-like eigendirection,
// oriented so the chamber (the sum of the weights) is past-directed.
LorentzFrame packing_frame(const RootBasis& basis,
                           const Tolerances& tol = default_tol());

// Same frame construction from the form alone, with a fixed sign convention
// for the time axis. Pairwise products of past-normalized vectors do not
// depend on that sign choice.
LorentzFrame frame_from_form(const BilinearForm& b,
                             const Tolerances& tol = default_tol());

// x / sqrt(B(x,x)), flipped so the last Minkowski coordinate is positive.
// Throws NotSpaceLike when B(x,x) <= tol.zero.
Eigen::VectorXd normalize(const Eigen::VectorXd& x, const BilinearForm& b,
                          const LorentzFrame& frame,
                          const Tolerances& tol = default_tol());

// Spherical-cap correspondence: the normalized vector cuts the cap
// {u : u.w >= b} on the unit sphere, and stereographic projection from the
// north pole turns the cap into a ball in R^(rho-2). Center and radius come
// from the projected images of the two meridian extreme points of the cap; a
// cap whose boundary passes through the pole becomes a half-space and a cap
// containing the pole an outside ball with negative curvature.
Ball ball_of_vector(const Eigen::VectorXd& x, const LorentzFrame& frame,
                    const Tolerances& tol = default_tol());

// Classification of B(x_hat, y_hat) after past-normalization:
// below -1 Disjoint, near -1 Tangent (tangency band), (-1, 0] Overlap,
// (0, 1) HeavyOverlap, near or above 1 Contained.
PairRelation pair_relation(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const BilinearForm& b,
                           const Tolerances& tol = default_tol());

// All-pairs classification of the space-like elements. Vectors keep their
// own time orientation (no past flip); the frame sign is chosen so that the
// minority side counts as future-directed.
PackingReport verify_packing(const std::vector<OrbitElement>& elements,
                             const BilinearForm& b,
                             const Tolerances& tol = default_tol(),
                             int threads = 1);

// Index pairs (into `elements`) of space-like elements whose balls are
// tangent.
std::vector<std::pair<int, int>> tangency_graph(
    const std::vector<OrbitElement>& elements, const BilinearForm& b,
    const Tolerances& tol = default_tol());

// Stereographic image of an isotropic direction, used to overlay limit-root
// samples on a rendered packing. Returns nullopt for directions at or very
// near the projection pole.
std::optional<Eigen::VectorXd> isotropic_point(const Eigen::VectorXd& x,
                                               const LorentzFrame& frame,
                                               const Tolerances& tol = default_tol());

}  // namespace coxpack
