#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ahs/core.hpp"
#include "ahs/tree.hpp"

namespace ahs {

// One variable z_b in [0,1] per surviving bundle with objective weight r(b),
// and one constraint z_a + z_b <= 1 per unordered intersecting pair.
struct LinearProgram {
  std::vector<NaturalBundle> variables;
  std::vector<double> weights;
  std::vector<std::pair<int, int>> conflicts;  // index pairs, first < second
};

// Bundles that can appear in some improving scheme: more than one
// instantiation, second price at least every one-attribute split of the
// t recursion, and strictly positive gain.
std::vector<NaturalBundle> prune_variables(const ProblemInstance& inst,
                                           const TreeSolution& tree);
std::vector<std::int64_t> prune_variable_indices(const BundleLattice& lat,
                                                 const SecondPriceTable& prices,
                                                 const TreeSolution& tree);

LinearProgram build_program(const ProblemInstance& inst,
                            const std::vector<NaturalBundle>& survivors);
LinearProgram build_program(const BundleLattice& lat, const SecondPriceTable& prices,
                            const std::vector<std::int64_t>& survivors);

struct RelaxationSolution {
  double gain = 0.0;
  std::vector<double> assignment;  // aligned with LinearProgram::variables
};

// Dense simplex over exact rationals (weights converted exactly from their
// double representation), solved independently per connected component of
// the conflict graph. Deterministic: same program, same bits out.
RelaxationSolution solve_relaxation(const LinearProgram& lp);

// Baseline plus the relaxation optimum: an upper bound on the revenue of
// every hiding scheme.
double upper_bound_revenue(const ProblemInstance& inst);
double upper_bound_gain(const BundleLattice& lat, const SecondPriceTable& prices,
                        const TreeSolution& tree);

// Text dump in LP format (Maximize / Subject To / Bounds / End).
void write_lp_text(const LinearProgram& lp, std::ostream& os);

}  // namespace ahs
