#pragma once

#include <cstdint>
#include <vector>

#include "ahs/core.hpp"

namespace ahs {

// Merge graph for binary attribute spaces: one vertex per instantiation, one
// edge per Hamming-distance-one pair whose merged two-instantiation bundle
// has strictly positive gain. Flipping one coordinate flips parity, so the
// graph is bipartite by coordinate-sum parity.
struct MatchEdge {
  std::int64_t u = 0, v = 0;  // instantiation indices, u < v
  int attr = 0;               // the attribute hidden by the merge
  double weight = 0.0;        // gain of the merged bundle
};

struct MatchGraph {
  std::int64_t num_vertices = 0;
  std::vector<MatchEdge> edges;
};

// Requires every cardinality to be exactly 2.
MatchGraph build_match_graph(const ProblemInstance& inst);
MatchGraph build_match_graph(const BundleLattice& lat, const SecondPriceTable& prices);

struct MatchingResult {
  HidingScheme scheme;  // one two-instantiation bundle per matched edge
  double gain = 0.0;
};

// Exact maximum-weight matching via successive augmenting paths with
// potentials; augmentation stops when the best path no longer improves the
// total. Deterministic: vertices are processed in index order.
MatchingResult max_weight_matching(const AttributeSpec& spec, const MatchGraph& graph);
MatchingResult max_weight_matching(const ProblemInstance& inst);

}  // namespace ahs
