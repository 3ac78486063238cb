#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/core.hpp"
#include "ahs/exact.hpp"
#include "ahs/gadgets.hpp"
#include "ahs/tree.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ahs;
using test::bundle;

namespace {

OneInThreeSatInstance tiny_formula() {
  OneInThreeSatInstance sat;
  sat.num_variables = 3;
  sat.clauses = {{1, 2, 3}};
  return sat;
}

const HelpfulBundle* find_helpful(const ReductionInstance& red, int family, int e,
                                  int d) {
  for (const HelpfulBundle& h : red.helpful)
    if (h.family == family && h.e == e && h.d == d) return &h;
  return nullptr;
}

}  // namespace

TEST_CASE("formula validation") {
  OneInThreeSatInstance sat = tiny_formula();
  CHECK_NOTHROW(sat.validate());
  CHECK(sat.num_clauses() == 1);
  CHECK(sat.occurrences(1) == 1);
  CHECK(sat.occurrences(2) == 1);

  OneInThreeSatInstance dup = sat;
  dup.clauses[0] = {1, 1, 2};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  OneInThreeSatInstance range = sat;
  range.clauses[0] = {1, 2, 4};
  CHECK_THROWS_AS(range.validate(), std::invalid_argument);
}

TEST_CASE("satisfiability by enumeration") {
  CHECK(one_in_three_satisfiable(tiny_formula()));

  // Every pair of clauses over at most four variables shares two variables,
  // so setting one shared variable true satisfies both; the smallest
  // unsatisfiable formula needs all four triples over four variables. Summing
  // the one-per-clause requirement over those clauses counts each variable
  // three times, and 3t = 4 has no integer solution.
  OneInThreeSatInstance unsat;
  unsat.num_variables = 4;
  unsat.clauses = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
  CHECK_FALSE(one_in_three_satisfiable(unsat));
}

TEST_CASE("reduction shape for one clause over three variables") {
  ReductionInstance red = reduction_instance(tiny_formula());
  const AttributeSpec& spec = red.instance.spec();
  CHECK(spec.k() == 13);  // 2 variable bits, 0 clause bits, 3 selectors, 4 pairs
  CHECK(spec.num_instantiations() == 8192);
  CHECK(spec.all_binary());
  CHECK(red.helpful.size() == 9);
  CHECK(red.instance.num_bidders() == 2 + 2 * 9);
  CHECK(red.params.L == 2.0);
  CHECK(red.params.eps == 0.5);
  CHECK(red.target_gain() == 6.0 - 2.0 * 0.5);
}

TEST_CASE("instantiation count stays within the stated bound") {
  for (int E = 3; E <= 4; ++E)
    for (int D = 1; D <= 2; ++D) {
      OneInThreeSatInstance sat;
      sat.num_variables = E;
      for (int d = 0; d < D; ++d) sat.clauses.push_back({1, 2, 3});
      ReductionInstance red = reduction_instance(sat);
      CHECK(red.instance.spec().num_instantiations() <=
            static_cast<std::int64_t>(8192) * D * E);
    }
}

TEST_CASE("helpful bundle intersection structure") {
  OneInThreeSatInstance sat;
  sat.num_variables = 4;
  sat.clauses = {{1, 2, 3}, {2, 3, 4}};
  ReductionInstance red = reduction_instance(sat);

  // The complete conflict matrix among helpful bundles: occurrence bundles of
  // a variable meet its repeat-discount bundle; the three selector bundles of
  // a clause meet each other and every occurrence bundle of that clause
  // except the one at their own position. Nothing else meets.
  auto predicted = [&](const HelpfulBundle& a, const HelpfulBundle& b) {
    const HelpfulBundle* lo = &a;
    const HelpfulBundle* hi = &b;
    if (lo->family > hi->family) std::swap(lo, hi);
    if (hi->family <= 3) return false;  // occurrence bundles never meet
    if (hi->family == 4)
      return lo->family <= 3 && lo->e == hi->e;
    if (lo->family <= 3)
      return lo->d == hi->d && lo->family != hi->family - 4;
    if (lo->family == 4) return false;
    return lo->d == hi->d && lo->family != hi->family;
  };

  int met = 0;
  for (std::size_t i = 0; i < red.helpful.size(); ++i)
    for (std::size_t j = i + 1; j < red.helpful.size(); ++j) {
      bool meet = intersects(red.helpful[i].bundle, red.helpful[j].bundle);
      CHECK(meet == predicted(red.helpful[i], red.helpful[j]));
      met += meet;
    }
  // Per clause: 3 selector pairs + 2 occurrence conflicts per selector
  // bundle; per variable: one conflict per occurrence.
  CHECK(met == sat.num_clauses() * (3 + 6) + 3 * sat.num_clauses());

  // Spot checks named after the proof's own claims.
  const HelpfulBundle* b5 = find_helpful(red, 5, 0, 1);
  const HelpfulBundle* occ1 = find_helpful(red, 1, sat.clauses[0][0], 1);
  const HelpfulBundle* occ2 = find_helpful(red, 2, sat.clauses[0][1], 1);
  REQUIRE(b5 != nullptr);
  REQUIRE(occ1 != nullptr);
  REQUIRE(occ2 != nullptr);
  CHECK_FALSE(intersects(b5->bundle, occ1->bundle));
  CHECK(intersects(b5->bundle, occ2->bundle));
}

TEST_CASE("verifier confirms the intended gain landscape") {
  ReductionInstance red = reduction_instance(tiny_formula());
  VerifyOptions opts;
  opts.sample_count = 20000;
  VerifyReport report = verify_reduction(red, opts);
  CHECK(report.ok);
  CHECK(report.helpful_checked == 9);
  CHECK(report.intersecting_checked > 0);
  CHECK(report.sampled_checked > 0);
  CHECK(report.violations == 0);
}

TEST_CASE("verifier catches tampering") {
  ReductionInstance red = reduction_instance(tiny_formula());
  BundleLattice lat(red.instance.spec());
  SecondPriceTable prices = second_price_table(lat, red.instance);

  ReductionInstance wrong_gain = red;
  wrong_gain.helpful[0].intended_gain += 0.5;
  VerifyOptions opts;
  opts.sample_count = 1000;
  VerifyReport a = verify_reduction(wrong_gain, lat, prices, opts);
  CHECK_FALSE(a.ok);
  CHECK(a.violations >= 1);
  CHECK_FALSE(a.messages.empty());

  // Dropping a helpful entry leaves its positive gain unexplained; the bundle
  // intersects other helpful bundles, so the closure walk finds it.
  ReductionInstance dropped = red;
  dropped.helpful.erase(dropped.helpful.begin());
  VerifyReport b = verify_reduction(dropped, lat, prices, opts);
  CHECK_FALSE(b.ok);
  CHECK(b.violations >= 1);
}

TEST_CASE("satisfiable formula reaches the target gain exactly") {
  OneInThreeSatInstance sat = tiny_formula();
  REQUIRE(one_in_three_satisfiable(sat));
  ReductionParams params{2.0, 0.25};
  ReductionInstance red = reduction_instance(sat, params);
  CHECK(red.target_gain() == 5.5);

  BundleLattice lat(red.instance.spec());
  SecondPriceTable prices = second_price_table(lat, red.instance);
  TreeSolution tree = tree_dp(lat, prices);
  ExactResult ex = exact_optimum(lat, prices, tree, kDefaultNodeBudget);
  REQUIRE(ex.status == SearchStatus::proven);
  CHECK(ex.gain == doctest::Approx(red.target_gain()).epsilon(1e-9));
}

TEST_CASE("reduction parameter validation") {
  OneInThreeSatInstance sat = tiny_formula();
  CHECK_THROWS_AS(reduction_instance(sat, ReductionParams{1.0, 0.25}),
                  std::invalid_argument);  // needs L > D
  CHECK_THROWS_AS(reduction_instance(sat, ReductionParams{2.0, 1.5}),
                  std::invalid_argument);  // needs eps < 1/D
  CHECK_THROWS_AS(reduction_instance(sat, ReductionParams{2.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("worst case family numbers") {
  ProblemInstance inst = gap_instance(2);
  CHECK(inst.num_bidders() == 4);
  CHECK(baseline_revenue(inst) == 0.0);
  CHECK(second_price(inst, bundle({kHidden, kHidden})) == 2.0);

  ExactResult ex = exact_optimum(inst);
  REQUIRE(ex.status == SearchStatus::proven);
  CHECK(ex.gain == 2.0);

  // The clustering benchmark pairs the two extremes and the two middles.
  double clustered = test::cluster_revenue(inst, {{0, 3}, {1, 2}});
  CHECK(clustered == 3.0);

  CHECK_THROWS_AS(gap_instance(1), std::invalid_argument);
}

TEST_CASE("cycle scheme patterns") {
  HidingScheme s = cycle_scheme(3);
  REQUIRE(s.bundles.size() == 3);
  CHECK(s.bundles[0] == bundle({kHidden, 1, 0}));
  CHECK(s.bundles[1] == bundle({0, kHidden, 1}));
  CHECK(s.bundles[2] == bundle({1, 0, kHidden}));
  for (int k = 3; k <= 8; ++k) {
    AttributeSpec spec(std::vector<int>(k, 2));
    CHECK_FALSE(validate_scheme(spec, cycle_scheme(k)).has_value());
  }
  CHECK_THROWS_AS(cycle_scheme(2), std::invalid_argument);
}
