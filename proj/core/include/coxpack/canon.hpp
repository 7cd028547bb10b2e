#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxpack/graph.hpp"

namespace coxpack {

// Label-preserving canonical form. Two graphs get the same key exactly when
// an edge-label-preserving vertex bijection exists between them; dotted
// labels are compared after quantization to 1e-7.
std::string canonical_key(const CoxeterGraph& g);

bool is_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b);

// Vertex map from a to b realizing an isomorphism, or nullopt.
std::optional<std::vector<int>> isomorphism_map(const CoxeterGraph& a,
                                                const CoxeterGraph& b);

}  // namespace coxpack
