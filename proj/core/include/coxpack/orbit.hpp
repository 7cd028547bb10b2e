#pragma once

#include <limits>
#include <vector>

#include "coxpack/cone.hpp"

namespace coxpack {

// One reflection-group image of a seed root or weight. The height is the
// pairing against the chamber functional: the weight orbit pairs against
// -sum(weights), the root orbit against +sum(weights); both conventions make
// the height positive on the emitted side.
struct OrbitElement {
  Eigen::VectorXd vector;
  int word_length = 0;
  double height = 0.0;
};

// Exploration bounds. Negative integer bounds and an infinite height bound
// mean "unbounded"; at least one bound must be finite.
struct OrbitBudget {
  int max_word_length = -1;
  double max_height = std::numeric_limits<double>::infinity();
  long long max_elements = -1;

  bool has_finite_bound() const {
    return max_word_length >= 0 || std::isfinite(max_height) ||
           max_elements >= 0;
  }
};

// Breadth-first orbit of the weights under the reflection group, expanding x
// by generator s only when B(x, alpha_s) exceeds the zero tolerance (the
// length-increasing direction). Deduplication is by coordinate quantization.
// Emission order is deterministic and word_length is minimal.
std::vector<OrbitElement> orbit_weights(const RootBasis& basis,
                                        const OrbitBudget& budget,
                                        const Tolerances& tol = default_tol(),
                                        int threads = 1);

// Breadth-first positive-root orbit; x expands by s when B(x, alpha_s) is
// below the negative tolerance, which walks away from the chamber.
std::vector<OrbitElement> orbit_roots(const RootBasis& basis,
                                      const OrbitBudget& budget,
                                      const Tolerances& tol = default_tol(),
                                      int threads = 1);

// Normalized deep roots beta/height(beta) for roots with height at least
// min_height; these approach the isotropic cone. Throws InsufficientDepth if
// the orbit is exhausted (or a safety cap is hit) before `count` samples.
std::vector<Eigen::VectorXd> limit_root_samples(
    const RootBasis& basis, double min_height, int count,
    const Tolerances& tol = default_tol());

}  // namespace coxpack
