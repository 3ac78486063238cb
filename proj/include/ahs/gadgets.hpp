#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ahs/core.hpp"

namespace ahs {

// Monotone one-in-three satisfiability: clauses of three distinct positive
// literals; a satisfying assignment makes exactly one literal per clause true.
struct OneInThreeSatInstance {
  int num_variables = 0;                    // E, variables are 1..E
  std::vector<std::array<int, 3>> clauses;  // D clauses of variable indices

  void validate() const;
  int num_clauses() const { return static_cast<int>(clauses.size()); }
  // Occurrences of variable e across all clause positions.
  int occurrences(int e) const;
};

// Exhaustive over the 2^E assignments.
bool one_in_three_satisfiable(const OneInThreeSatInstance& sat);

// Independent uniform [0,1) valuations for n bidders over a uniform
// cardinality space, drawn from the (seed, stream) Philox stream.
ProblemInstance random_instance(int k, int cardinality, int n, std::uint64_t seed,
                                std::uint64_t stream = 0);

struct ReductionParams {
  double L = 0.0;    // common base valuation, must exceed D
  double eps = 0.0;  // discount on repeated-variable bundles, in (0, 1/D)

  static ReductionParams defaults(const OneInThreeSatInstance& sat);
  void validate(const OneInThreeSatInstance& sat) const;
};

struct HelpfulBundle {
  NaturalBundle bundle;
  double intended_gain = 0.0;
  int family = 0;  // 1..7
  int e = 0;       // variable, or 0 when the family is clause-indexed
  int d = 0;       // clause, or 0 when the family is variable-indexed
};

// Auction scenario whose optimal hiding gain reaches 6D - 2D*eps exactly when
// the formula is one-in-three satisfiable. Attributes are binary: a variable
// block, a clause block, three selector attributes and four attribute pairs.
// Bidders are two constant-L bidders plus two per helpful bundle.
struct ReductionInstance {
  ProblemInstance instance;
  std::vector<HelpfulBundle> helpful;
  ReductionParams params;

  double target_gain() const;  // 6D - 2D*eps
};

ReductionInstance reduction_instance(const OneInThreeSatInstance& sat,
                                     const ReductionParams& params);
ReductionInstance reduction_instance(const OneInThreeSatInstance& sat);

struct VerifyOptions {
  bool full_sweep = false;             // check every bundle instead of sampling
  std::int64_t sample_count = 100000;  // non-intersecting bundles to sample
  std::uint64_t sample_seed = 12345;
};

struct VerifyReport {
  bool ok = false;
  std::int64_t helpful_checked = 0;
  std::int64_t intersecting_checked = 0;
  std::int64_t sampled_checked = 0;
  std::int64_t violations = 0;
  std::vector<std::string> messages;  // first few violations, for diagnostics
};

// Confirms every helpful bundle has its intended gain and that other bundles
// gain nothing: all bundles intersecting a helpful one are checked, plus a
// seeded sample of the rest (or everything under full_sweep).
VerifyReport verify_reduction(const ReductionInstance& red,
                              const BundleLattice& lat,
                              const SecondPriceTable& prices,
                              const VerifyOptions& options);
VerifyReport verify_reduction(const ReductionInstance& red,
                              const VerifyOptions& options = {});

// Worst-case family: bidder 0 wants only (0,...,0) at m/2, bidder m-1 only
// (1,...,1) at m/2, and every in-between bidder wants its own instantiation
// at 1. Hiding tops out at m/2 while clustering the two extremes earns m-1.
ProblemInstance gap_instance(int k);

// The k >= 3 cycle witness that recursive splitting cannot represent: bundle
// i hides attribute i and fixes attribute (i+1) mod k to 1, the rest to 0.
HidingScheme cycle_scheme(int k);

}  // namespace ahs
