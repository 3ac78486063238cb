#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "ahs/core.hpp"
#include "ahs/gadgets.hpp"
#include "ahs/rng.hpp"
#include "ahs/tree.hpp"
#include "fixtures.hpp"

using namespace ahs;
using test::bundle;

TEST_CASE("diagonal fixture tree optimum") {
  ProblemInstance inst = test::diagonal_instance();
  TreeSolution sol = tree_dp(inst);
  CHECK(sol.optimal_gain == 2.0);
  // Splitting ties with keeping the root, and ties keep the bundle whole.
  REQUIRE(sol.optimal_scheme.bundles.size() == 1);
  CHECK(sol.optimal_scheme.bundles[0] == bundle({kHidden, kHidden}));
  CHECK(scheme_revenue(inst, sol.optimal_scheme) == 2.0);
}

TEST_CASE("opposed fixture tree optimum") {
  ProblemInstance inst = test::opposed_instance();
  TreeSolution sol = tree_dp(inst);
  CHECK(sol.optimal_gain == 3.0);
  REQUIRE(sol.optimal_scheme.bundles.size() == 1);
  CHECK(sol.optimal_scheme.bundles[0] == bundle({kHidden}));
}

TEST_CASE("tree value dominates every bundle price") {
  ProblemInstance inst = random_instance(3, 3, 4, 31, 2);
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  TreeSolution sol = tree_dp(lat, prices);
  for (std::int64_t b = 0; b < lat.num_bundles(); ++b)
    CHECK(sol.t[b] >= prices.second[b] - 1e-12);
}

TEST_CASE("extracted scheme is valid and achieves the dp value") {
  for (int trial = 0; trial < 30; ++trial) {
    int k = 1 + trial % 3;
    int card = 2 + trial % 3;
    ProblemInstance inst = random_instance(k, card, 2 + trial % 4, 17, trial);
    TreeSolution sol = tree_dp(inst);
    CHECK_FALSE(validate_scheme(inst.spec(), sol.optimal_scheme).has_value());
    double replay = scheme_gain(inst, sol.optimal_scheme);
    CHECK(replay == doctest::Approx(sol.optimal_gain).epsilon(1e-9));
    CHECK(sol.optimal_gain >= -1e-12);
  }
}

TEST_CASE("replaying the old scheme never beats the new optimum") {
  ProblemInstance base = random_instance(2, 3, 3, 77, 1);
  std::vector<std::vector<double>> bumped_rows;
  Philox4x32 g(5, 5);
  for (int i = 0; i < base.num_bidders(); ++i) {
    std::vector<double> row;
    for (std::int64_t w = 0; w < base.spec().num_instantiations(); ++w)
      row.push_back(base.valuation(i, w) + 0.25 * g.next_u01());
    bumped_rows.push_back(std::move(row));
  }
  ProblemInstance bumped(base.spec(), bumped_rows);
  TreeSolution base_sol = tree_dp(base);
  TreeSolution bumped_sol = tree_dp(bumped);
  double replay = scheme_revenue(bumped, base_sol.optimal_scheme);
  CHECK(bumped_sol.optimal_gain + baseline_revenue(bumped) >= replay - 1e-9);
}

TEST_CASE("serial and parallel dp agree bitwise") {
  for (int trial = 0; trial < 6; ++trial) {
    ProblemInstance inst = random_instance(3, 2 + trial % 2, 3, 9, trial);
    BundleLattice lat(inst.spec());
    SecondPriceTable prices = second_price_table(lat, inst);
    TreeSolution a = tree_dp_serial(lat, prices);
    TreeSolution b = tree_dp(lat, prices);
    CHECK(std::memcmp(a.t.data(), b.t.data(), a.t.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.best_split.data(), b.best_split.data(),
                      a.best_split.size() * sizeof(double)) == 0);
    CHECK(a.optimal_gain == b.optimal_gain);
    CHECK(a.optimal_scheme.bundles == b.optimal_scheme.bundles);
  }
}

TEST_CASE("three cycle beats every tree scheme") {
  // Six bidders, each valuing one member of the cycle bundles at 1: every
  // cycle bundle earns a unit of gain, but no split hierarchy can hold all
  // three at once.
  AttributeSpec spec({2, 2, 2});
  HidingScheme cycle = cycle_scheme(3);
  REQUIRE(cycle.bundles.size() == 3);
  CHECK_FALSE(validate_scheme(spec, cycle).has_value());

  std::vector<std::vector<double>> rows;
  for (const NaturalBundle& b : cycle.bundles) {
    auto pts = enumerate_instantiations(spec, b);
    REQUIRE(pts.size() == 2);
    for (const auto& w : pts) {
      std::vector<double> row(spec.num_instantiations(), 0.0);
      row[instantiation_index(spec, w)] = 1.0;
      rows.push_back(std::move(row));
    }
  }
  ProblemInstance inst(spec, rows);

  CHECK(baseline_revenue(inst) == 0.0);
  CHECK(scheme_gain(inst, cycle) == 3.0);
  TreeSolution sol = tree_dp(inst);
  CHECK(sol.optimal_gain == 2.0);
  CHECK(scheme_gain(inst, cycle) > sol.optimal_gain);
}

TEST_CASE("hidden bundle census matches a direct scan") {
  for (int trial = 0; trial < 10; ++trial) {
    ProblemInstance inst = random_instance(3, 2, 3, 13, trial);
    BundleLattice lat(inst.spec());
    SecondPriceTable prices = second_price_table(lat, inst);
    TreeSolution sol = tree_dp(lat, prices);
    std::int64_t expect = 0;
    for (std::int64_t b = 0; b < lat.num_bundles(); ++b)
      if (lat.hidden_count(b) >= 2 && prices.second[b] >= sol.best_split[b])
        ++expect;
    CHECK(hm_count(lat, prices, sol) == expect);
    CHECK(hm_count(inst) == expect);
  }
}

TEST_CASE("ten binary attributes run end to end") {
  ProblemInstance inst = random_instance(10, 2, 10, 1001, 0);
  TreeSolution sol = tree_dp(inst);
  CHECK(sol.optimal_gain >= 0.0);
  CHECK_FALSE(validate_scheme(inst.spec(), sol.optimal_scheme).has_value());
  CHECK(scheme_gain(inst, sol.optimal_scheme) ==
        doctest::Approx(sol.optimal_gain).epsilon(1e-9));
}
