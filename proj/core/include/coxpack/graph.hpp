#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "coxpack/errors.hpp"
#include "coxpack/tolerances.hpp"

namespace coxpack {

// Edge of a Coxeter graph, Vinberg convention:
//   None        no edge, Gram entry 0 (order-2 pair)
//   Solid(m)    label m >= 3, Gram entry -cos(pi/m)
//   Infinite    label inf, Gram entry -1
//   Dotted(c)   weight c > 1, Gram entry -c
struct EdgeLabel {
  enum Kind : std::uint8_t { None = 0, Solid, Infinite, Dotted };
  Kind kind = None;
  int m = 2;        // Solid only
  double c = 0.0;   // Dotted only

  static EdgeLabel none() { return {}; }
  static EdgeLabel solid(int m) { return {Solid, m, 0.0}; }
  static EdgeLabel infinite() { return {Infinite, 2, 0.0}; }
  static EdgeLabel dotted(double c) { return {Dotted, 2, c}; }

  bool absent() const { return kind == None; }
  double gram() const;

  friend bool operator==(const EdgeLabel& a, const EdgeLabel& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Solid) return a.m == b.m;
    if (a.kind == Dotted) return a.c == b.c;
    return true;
  }
};

// Undirected edge-labeled graph on vertices 0..n-1, dense storage.
class CoxeterGraph {
 public:
  CoxeterGraph() = default;
  explicit CoxeterGraph(int n) : n_(n), lab_(std::size_t(n) * n) {}

  int rank() const { return n_; }

  const EdgeLabel& label(int i, int j) const { return lab_[idx(i, j)]; }
  void set_label(int i, int j, EdgeLabel l) {
    lab_[idx(i, j)] = l;
    lab_[idx(j, i)] = l;
  }

  bool adjacent(int i, int j) const { return !label(i, j).absent(); }

  // Edges as (i, j, label) with i < j, row-major order.
  std::vector<std::tuple<int, int, EdgeLabel>> edges() const;

  // Induced subgraph on the given vertices, in the given order.
  CoxeterGraph induced(const std::vector<int>& verts) const;

  // Disjoint union, vertices of `other` renumbered after ours.
  CoxeterGraph disjoint_union(const CoxeterGraph& other) const;

  bool connected() const;
  std::vector<std::vector<int>> components() const;

  friend bool operator==(const CoxeterGraph& a, const CoxeterGraph& b) {
    return a.n_ == b.n_ && a.lab_ == b.lab_;
  }

 private:
  std::size_t idx(int i, int j) const { return std::size_t(i) * n_ + j; }
  int n_ = 0;
  std::vector<EdgeLabel> lab_;
};

// Symmetric Gram matrix of the graph: unit diagonal, off-diagonal entries per
// the edge convention above.
Eigen::MatrixXd gram_matrix(const CoxeterGraph& g);

enum class GraphType { Finite, Affine, Indefinite };

// Definiteness class of the Gram matrix: positive definite -> Finite,
// positive semidefinite with a kernel -> Affine, otherwise Indefinite.
GraphType classify_type(const Eigen::MatrixXd& gram,
                        const Tolerances& tol = default_tol());
GraphType classify_type(const CoxeterGraph& g,
                        const Tolerances& tol = default_tol());

// Positive semidefiniteness of the Gram matrix (Finite or Affine).
bool is_finite_or_affine(const Eigen::MatrixXd& gram,
                         const Tolerances& tol = default_tol());

// Dimension of the Gram kernel.
int gram_corank(const CoxeterGraph& g, const Tolerances& tol = default_tol());

struct LevelResult {
  int level = 0;
  // All witnessing subgraphs are Finite (no Affine ones at the level cut).
  bool strict = false;
};

// Smallest l such that deleting any l vertices leaves a Finite or Affine
// graph; returns l = n if no l < n works (cannot happen for n >= 1, kept as a
// guard). strict <=> every (n-l)-subset is Finite.
LevelResult graph_level(const CoxeterGraph& g,
                        const Tolerances& tol = default_tol());

const char* to_string(GraphType t);

// Text format, one record per line, '#' starts a comment:
//   n <int>
//   edge <i> <j> <m|inf>
//   dedge <i> <j> <c>
// parse(serialize(g)) == g bit-exactly: dotted weights round-trip through
// shortest-exact decimal formatting.
CoxeterGraph parse_cox(const std::string& text);
CoxeterGraph parse_cox_file(const std::string& path);
std::string serialize_cox(const CoxeterGraph& g);

}  // namespace coxpack
