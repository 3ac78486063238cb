#pragma once

#include <cstdint>
#include <vector>

#include "ahs/core.hpp"

namespace ahs {

// Bottom-up recursion over the bundle lattice:
//   t(b) = max(2(b), max over hidden x of sum_i t(b restricted to x=i)).
// t(root) is the best revenue among recursively-split schemes, and the
// extracted scheme realizes it. Extraction keeps a bundle whenever its second
// price already matches the best split (ties kept unsplit; ties among
// attributes resolved toward the lowest index), so results are deterministic.
struct TreeSolution {
  AttributeSpec spec;
  std::vector<double> t;           // per bundle index
  std::vector<double> best_split;  // -inf for unit bundles
  HidingScheme optimal_scheme;     // non-unit bundles only, canonical order
  double optimal_gain = 0.0;       // t(root) - baseline

  double t_of(const NaturalBundle& b) const { return t[bundle_index(spec, b)]; }
};

TreeSolution tree_dp(const BundleLattice& lat, const SecondPriceTable& prices);
TreeSolution tree_dp_serial(const BundleLattice& lat, const SecondPriceTable& prices);
TreeSolution tree_dp(const ProblemInstance& inst);

// Bundles with at least two hidden attributes whose second price is not
// beaten by any one-attribute split.
std::int64_t hm_count(const BundleLattice& lat, const SecondPriceTable& prices,
                      const TreeSolution& tree);
std::int64_t hm_count(const ProblemInstance& inst);

}  // namespace ahs
