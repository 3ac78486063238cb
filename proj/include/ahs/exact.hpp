#pragma once

#include <cstdint>

#include "ahs/core.hpp"
#include "ahs/relax.hpp"
#include "ahs/tree.hpp"

namespace ahs {

inline constexpr std::int64_t kDefaultNodeBudget = 10'000'000;
inline constexpr int kBruteForceCap = 25;

enum class SearchStatus { proven, budget_exhausted };

struct ExactResult {
  double gain = 0.0;
  HidingScheme scheme;
  SearchStatus status = SearchStatus::proven;
  std::int64_t nodes = 0;
};

// Branch and bound for a maximum-weight independent set in the conflict
// graph of the pruned candidate bundles. Candidates are branched in
// descending weight order; subtrees are cut with a greedy clique-partition
// bound on the remaining candidates. If the node budget runs out the best
// scheme found so far is returned with status budget_exhausted.
ExactResult exact_optimum(const ProblemInstance& inst,
                          std::int64_t node_budget = kDefaultNodeBudget);
ExactResult exact_optimum(const BundleLattice& lat, const SecondPriceTable& prices,
                          const TreeSolution& tree, std::int64_t node_budget);

struct BruteForceResult {
  double gain = 0.0;
  HidingScheme scheme;
};

// Enumerates every independent subset of the pruned candidates. Refuses more
// than kBruteForceCap candidates; use exact_optimum beyond that.
BruteForceResult brute_force_optimum(const ProblemInstance& inst);

}  // namespace ahs
