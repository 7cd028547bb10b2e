#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxpack/graph.hpp"
#include "coxpack/tolerances.hpp"

namespace coxpack {

enum class FamilyTag {
  Lanner,
  QuasiLanner,
  Level2Corank0,
  PrismOrthoBased,
  PrismSpliced,
  PyrLightApex,
  PyrSpaceApex,
  Product,
  TwoFoldPyr,
};

const char* to_string(FamilyTag tag);

// Result of one enumeration pipeline. `graphs` holds the deduplicated family
// members; `bins` the named sub-lists (raw candidate partitions, level bins);
// `counts` the named counters used for reporting, in a stable order.
struct GraphFamily {
  FamilyTag tag = FamilyTag::Lanner;
  std::vector<CoxeterGraph> graphs;
  std::map<std::string, std::vector<CoxeterGraph>> bins;
  std::vector<std::pair<std::string, long long>> counts;
  std::string notes;
};

struct VertexRole {
  bool real = false;
  bool ideal = false;
  bool port = false;
  bool surreal = false;
  bool hinge_member = false;
};

// Connected graphs of the given rank whose deletion level equals `level`,
// with zero-corank Gram matrix (and Lorentzian signature for level >= 1), up
// to isomorphism. Labels run over {2..label_bound} plus infinity when
// allowed; when rank - level >= 3 the label alphabet is provably capped at 6
// with no infinity, so label_bound may be omitted (<= 0). Otherwise a missing
// label_bound throws UnboundedFamily.
std::vector<CoxeterGraph> enumerate_corank0(int rank, int level,
                                            int label_bound = 0,
                                            bool allow_infinity = false,
                                            const Tolerances& tol = default_tol());

// Level-1 strict (compact simplex) graphs of the given rank; rank 3 requires
// a label bound.
std::vector<CoxeterGraph> lanner_graphs(int rank, int label_bound = 0,
                                        const Tolerances& tol = default_tol());

// Level-1 non-strict (finite-volume, non-compact simplex) graphs.
std::vector<CoxeterGraph> quasi_lanner_graphs(int rank, int label_bound = 0,
                                              const Tolerances& tol = default_tol());

// Per-vertex classification: real / ideal / surreal by the type of the graph
// left after removal; port by the single-edge label-3 extension test; hinge
// membership via the unique ideal vertex or the unique real pair with affine
// complement.
std::vector<VertexRole> vertex_roles(const CoxeterGraph& g,
                                     const Tolerances& tol = default_tol());

struct SolvedLabel {
  enum class Case { Prism, Pyramid };
  double c = 0.0;
  Case kind = Case::Prism;
};

// Solves det(Gram) = 0 for the weight c of the dotted edge {i, j} by
// quadratic interpolation of the determinant at c in {0, 1, 2}. Keeps the
// roots c >= 1 that give corank exactly 1: none -> NoValidRoot, two ->
// AmbiguousRoot, one -> Prism when c > 1, Pyramid when c == 1 (the dotted
// edge becomes a solid edge with label infinity).
SolvedLabel solve_dashed_label(const CoxeterGraph& g, int i, int j,
                               const Tolerances& tol = default_tol());

// Simplicial-prism pipeline: attaches a dotted vertex to every real vertex
// of every Lorentzian level-2 corank-0 graph of rank >= 5 (connected ones
// plus the point-union of a level-1 graph), solves the dotted label, and
// partitions the candidates into pyramid cases, level-1 prisms and level-2
// orthogonally based prisms.
GraphFamily enumerate_prisms(const Tolerances& tol = default_tol());

// Joins two orthogonally based prism graphs sharing the same lateral
// subgraph into a single prism, re-solving the dotted label between the two
// base vertices. Throws IncompatibleBases when the lateral subgraphs are not
// isomorphic; returns nullopt when no valid dotted label exists.
std::optional<CoxeterGraph> splice(const CoxeterGraph& p1,
                                   const CoxeterGraph& p2,
                                   const Tolerances& tol = default_tol());

// Pyramids over a product of simplices with light-like apex: the ideal-vertex
// double extension of non-strict level-1 graphs (one simplex of dimension 1)
// and hinge identification of pairs of hinged non-strict level-1 graphs
// (both simplices of dimension > 1).
GraphFamily enumerate_pyramids_lightlike(const Tolerances& tol = default_tol());

// Products of two simplices, both of dimension > 1: connects ports of two
// level-1 strict graphs so that every cross-attachment pattern extends the
// other factor to a level-2 corank-0 graph with a unique real vertex. The
// level-1 results (the known eight product graphs of level 1) are kept in a
// bin; the confirmed level-2 graphs are the family.
GraphFamily enumerate_products(const Tolerances& tol = default_tol());

// Pyramids with space-like apex: triple extensions H+u+v+w of level-1 strict
// graphs (one simplex of dimension 1, including the dimension-4 pyramids
// over triangular prisms), and apex identification over the eight level-1
// product graphs (both simplices of dimension > 1). Also re-checks that no
// triangle label k in 7..50 yields a valid dimension-4 pyramid.
GraphFamily enumerate_pyramids_spacelike(const Tolerances& tol = default_tol());

// Two-fold pyramids: hinge-pair extensions by two vertices joined by an
// infinite edge (one simplex of dimension 1) and hinge identification of two
// hinged level-2 graphs (both simplices of dimension > 1).
GraphFamily enumerate_twofold_pyramids(const Tolerances& tol = default_tol());

enum class CombinatorialType { Product, Pyramid, TwoFoldPyramid };

const char* to_string(CombinatorialType t);

// Type of the corank-1 polytope read from the face lattice: the number of
// facets of the positive cone spanned by all but one root (0, 1 or 2
// apex-like facets). Throws NotCorankOne unless the canonicalized basis has
// corank exactly 1.
CombinatorialType combinatorial_type(const CoxeterGraph& g,
                                     const Tolerances& tol = default_tol());

}  // namespace coxpack
