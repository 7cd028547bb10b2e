#pragma once

#include <optional>
#include <vector>

#include "coxpack/quadratic.hpp"

namespace coxpack {

// Face of the cone spanned by the roots: the set of root indices lying on the
// face, its codimension rho - rank(span), and a supporting witness with
// B(witness, alpha_i) = 0 on the face and > 0 off it.
struct FacialSubset {
  std::vector<int> indices;
  int codim = 0;
  Eigen::VectorXd witness;
};

// Extreme ray of the dual chamber attached to a 1-facial subset I:
// B(vector, alpha_i) = 0 for i in I, > 0 otherwise, scaled so the smallest
// positive pairing is exactly 1.
struct WeightVector {
  Eigen::VectorXd vector;
  std::vector<int> indices;
  double norm = 0.0;
  CausalClass causal = CausalClass::SpaceLike;
};

// Witness for `indices` spanning a proper face of Cone(roots), or nullopt.
// The full index set has no proper-face witness and returns nullopt.
std::optional<Eigen::VectorXd> is_facial(const RootBasis& basis,
                                         const std::vector<int>& indices,
                                         const Tolerances& tol = default_tol());

// All faces of codimension exactly l, found by facet descent from the full
// cone with every candidate re-verified by the global witness LP.
std::vector<FacialSubset> facial_subsets(const RootBasis& basis, int l,
                                         const Tolerances& tol = default_tol());

// Weights for all 1-facial subsets.
std::vector<WeightVector> weights(const RootBasis& basis,
                                  const Tolerances& tol = default_tol());

// Smallest l such that every l-facial subsystem is finite or affine;
// strict <=> all of them are finite. Type of a facial subsystem is read off
// the induced subgraph of the source graph.
LevelResult system_level(const RootBasis& basis,
                         const Tolerances& tol = default_tol());

}  // namespace coxpack
