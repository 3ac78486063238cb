// End-to-end acceptance: one line per criterion, [PASS]/[FAIL] plus the
// measured values and runtime. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ahs/core.hpp"
#include "ahs/exact.hpp"
#include "ahs/experiment.hpp"
#include "ahs/gadgets.hpp"
#include "ahs/matching.hpp"
#include "ahs/relax.hpp"
#include "ahs/tree.hpp"
#include "oracle.hpp"

using namespace ahs;

namespace {

constexpr std::uint64_t kMasterSeed = 42;

int failures = 0;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

bool within(double value, double center, double tol) {
  return std::fabs(value - center) <= tol;
}

std::string csv_of(const ExperimentRow& row) {
  std::ostringstream out;
  write_csv_header(out);
  write_csv_row(row, out);
  return out.str();
}

std::string row1_csv;  // kept for the determinism rerun

void criterion_1() {
  auto start = clock_type::now();
  ExperimentRow row = run_experiment(ExperimentSetup{3, 2, 3}, 100, kMasterSeed);
  double elapsed = seconds_since(start);
  row1_csv = csv_of(row);

  bool pass = row.match_pct.has_value() && within(row.tree_pct, 13.33, 3.0) &&
              within(*row.match_pct, 11.58, 3.0) && within(row.ub_pct, 15.42, 3.0) &&
              within(row.opt_count, 47.0, 15.0) && elapsed <= 10.0 &&
              row.flagged_trials == 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "k=n=3 C=2: tree %.3f (13.33±3), match %.3f (11.58±3), ub %.3f "
                "(15.42±3), opt %d (47±15), %.1fs (≤10s)",
                row.tree_pct, row.match_pct ? *row.match_pct : -1.0, row.ub_pct,
                row.opt_count, elapsed);
  report(1, pass, buf);
}

void criterion_2() {
  auto start = clock_type::now();
  ExperimentRow row = run_experiment(ExperimentSetup{5, 2, 5}, 100, kMasterSeed);
  double elapsed = seconds_since(start);

  bool pass = row.match_pct.has_value() && within(row.tree_pct, 3.953, 1.0) &&
              within(*row.match_pct, 3.810, 1.0) && within(row.ub_pct, 4.354, 1.0) &&
              within(row.opt_count, 35.0, 15.0) && elapsed <= 30.0 &&
              row.flagged_trials == 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "k=n=5 C=2: tree %.3f (3.953±1), match %.3f (3.810±1), ub %.3f "
                "(4.354±1), opt %d (35±15), %.1fs (≤30s)",
                row.tree_pct, row.match_pct ? *row.match_pct : -1.0, row.ub_pct,
                row.opt_count, elapsed);
  report(2, pass, buf);
}

void criterion_3() {
  auto start = clock_type::now();
  ExperimentRow row = run_experiment(ExperimentSetup{10, 2, 10}, 100, kMasterSeed);
  double elapsed = seconds_since(start);

  bool pass = row.match_pct.has_value() && within(row.var_mean, 220.28, 60.0) &&
              within(row.hm_mean, 4.76, 2.5) && within(row.tree_pct, 0.836, 0.4) &&
              within(*row.match_pct, 0.927, 0.4) && within(row.ub_pct, 0.950, 0.4) &&
              row.opt_count <= 3 && elapsed <= 900.0 && row.flagged_trials == 0;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "k=n=10 C=2: var %.2f (220.28±60), hm %.2f (4.76±2.5), tree %.3f "
                "(0.836±0.4), match %.3f (0.927±0.4), ub %.3f (0.950±0.4), opt %d "
                "(≤3), %.0fs (≤900s)",
                row.var_mean, row.hm_mean, row.tree_pct,
                row.match_pct ? *row.match_pct : -1.0, row.ub_pct, row.opt_count,
                elapsed);
  report(3, pass, buf);
}

void criterion_4() {
  auto start = clock_type::now();
  struct Window {
    int k;
    double tree_center, ub_center, tol;
  };
  std::vector<Window> windows{{3, 9.251, 10.58, 3.0},
                              {5, 1.767, 1.976, 1.0},
                              {8, 0.296, 0.361, 0.3}};
  bool pass = true;
  std::string detail = "C=3 rows:";
  for (const Window& w : windows) {
    ExperimentRow row = run_experiment(ExperimentSetup{w.k, 3, w.k}, 100, kMasterSeed);
    bool ok = within(row.tree_pct, w.tree_center, w.tol) &&
              within(row.ub_pct, w.ub_center, w.tol) && !row.match_pct.has_value() &&
              row.flagged_trials == 0;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, " k=%d tree %.3f (%.3f±%.1f) ub %.3f (%.3f±%.1f)",
                  w.k, row.tree_pct, w.tree_center, w.tol, row.ub_pct, w.ub_center,
                  w.tol);
    detail += buf;
  }
  double elapsed = seconds_since(start);
  pass = pass && elapsed <= 1200.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", match NA, %.0fs (≤1200s)", elapsed);
  detail += buf;
  report(4, pass, detail);
}

void criterion_5() {
  auto start = clock_type::now();
  int violations = 0;
  int count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    static const int kSizes[3] = {2, 3, 5};
    int k = 1 + trial % 3;
    int n = kSizes[(trial / 7) % 3];
    ProblemInstance inst = random_instance(k, 2, n, kMasterSeed + 1000, trial);
    BundleLattice lat(inst.spec());
    SecondPriceTable prices = second_price_table(lat, inst);
    TreeSolution tree = tree_dp(lat, prices);
    double ub = upper_bound_gain(lat, prices, tree);
    ExactResult ex = exact_optimum(lat, prices, tree, kDefaultNodeBudget);
    BruteForceResult brute = brute_force_optimum(inst);
    double match = max_weight_matching(inst).gain;

    double tol = 1e-9 * std::max(1.0, std::fabs(ub));
    bool ok = ex.status == SearchStatus::proven &&
              tree.optimal_gain <= ex.gain + tol && ex.gain <= ub + tol &&
              match <= ex.gain + tol && std::fabs(ex.gain - brute.gain) <= tol;
    if (!ok) ++violations;
    ++count;
  }
  double elapsed = seconds_since(start);
  bool pass = violations == 0;
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "sandwich on %d random instances (k≤3, C=2): %d violations, %.0fs",
                count, violations, elapsed);
  report(5, pass, buf);
}

void criterion_6() {
  auto start = clock_type::now();
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int k = 1 + trial % 2;
    int card = 2 + trial % 3;
    int n = 2 + trial % 4;
    ProblemInstance inst = random_instance(k, card, n, kMasterSeed + 2000, trial);
    TreeSolution tree = tree_dp(inst);
    ExactResult ex = exact_optimum(inst);
    double tol = 1e-9 * std::max(1.0, std::fabs(ex.gain));
    if (ex.status != SearchStatus::proven ||
        std::fabs(tree.optimal_gain - ex.gain) > tol)
      ++violations;
  }
  double elapsed = seconds_since(start);
  bool pass = violations == 0;
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "tree = exact on 500 random instances (k≤2, C∈{2,3,4}): %d "
                "violations, %.0fs",
                violations, elapsed);
  report(6, pass, buf);
}

void criterion_7() {
  auto start = clock_type::now();
  int checked = 0, sat_count = 0, failures_here = 0;
  bool full_sweep_done = false;

  // Ordered clauses: every permutation of three distinct variables.
  auto ordered_clauses = [](int E) {
    std::vector<std::array<int, 3>> out;
    for (int a = 1; a <= E; ++a)
      for (int b = 1; b <= E; ++b)
        for (int c = 1; c <= E; ++c)
          if (a != b && a != c && b != c) out.push_back({a, b, c});
    return out;
  };

  for (int E = 3; E <= 4; ++E) {
    std::vector<std::array<int, 3>> clauses = ordered_clauses(E);
    // D = 1: reuse one lattice for every formula of this shape.
    {
      OneInThreeSatInstance probe;
      probe.num_variables = E;
      probe.clauses = {clauses[0]};
      ReductionInstance sample = reduction_instance(probe);
      BundleLattice lat(sample.instance.spec());
      for (const auto& c1 : clauses) {
        OneInThreeSatInstance sat;
        sat.num_variables = E;
        sat.clauses = {c1};
        ReductionInstance red = reduction_instance(sat);
        SecondPriceTable prices = second_price_table(lat, red.instance);

        VerifyOptions opts;
        bool sweep_here = !full_sweep_done && E == 3;
        opts.full_sweep = sweep_here;
        VerifyReport rep = verify_reduction(red, lat, prices, opts);
        if (sweep_here) full_sweep_done = true;

        TreeSolution tree = tree_dp(lat, prices);
        ExactResult ex = exact_optimum(lat, prices, tree, kDefaultNodeBudget);
        bool satisfiable = one_in_three_satisfiable(sat);
        sat_count += satisfiable;
        double target = red.target_gain();
        double tol = 1e-9 * std::max(1.0, target);
        bool reaches = std::fabs(ex.gain - target) <= tol;
        if (!rep.ok || ex.status != SearchStatus::proven ||
            reaches != satisfiable)
          ++failures_here;
        ++checked;
      }
    }
    // D = 2: ordered pairs with repetition, one shared lattice.
    {
      OneInThreeSatInstance probe;
      probe.num_variables = E;
      probe.clauses = {clauses[0], clauses[0]};
      ReductionInstance sample = reduction_instance(probe);
      BundleLattice lat(sample.instance.spec());
      for (const auto& c1 : clauses)
        for (const auto& c2 : clauses) {
          OneInThreeSatInstance sat;
          sat.num_variables = E;
          sat.clauses = {c1, c2};
          ReductionInstance red = reduction_instance(sat);
          SecondPriceTable prices = second_price_table(lat, red.instance);
          VerifyReport rep = verify_reduction(red, lat, prices, VerifyOptions{});
          TreeSolution tree = tree_dp(lat, prices);
          ExactResult ex = exact_optimum(lat, prices, tree, kDefaultNodeBudget);
          bool satisfiable = one_in_three_satisfiable(sat);
          sat_count += satisfiable;
          double target = red.target_gain();
          double tol = 1e-9 * std::max(1.0, target);
          bool reaches = std::fabs(ex.gain - target) <= tol;
          if (!rep.ok || ex.status != SearchStatus::proven ||
              reaches != satisfiable)
            ++failures_here;
          ++checked;
        }
    }
  }

  double elapsed = seconds_since(start);
  bool pass = failures_here == 0 && checked == 642 && full_sweep_done &&
              elapsed <= 1800.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d formulas (D≤2, E≤4), %d satisfiable, %d failures, full sweep "
                "done:%s, %.0fs (≤1800s)",
                checked, sat_count, failures_here, full_sweep_done ? "yes" : "no",
                elapsed);
  report(7, pass, buf);
}

void criterion_8() {
  auto start = clock_type::now();
  bool pass = true;
  double ratio6 = 0.0;
  std::string detail = "gap family:";
  for (int k = 2; k <= 6; ++k) {
    ProblemInstance inst = gap_instance(k);
    double m = static_cast<double>(inst.spec().num_instantiations());
    ExactResult ex = exact_optimum(inst);
    double revenue = baseline_revenue(inst) + ex.gain;

    std::vector<std::vector<std::int64_t>> clusters;
    clusters.push_back({0, static_cast<std::int64_t>(m) - 1});
    for (std::int64_t i = 1; i + 1 < static_cast<std::int64_t>(m); i += 2)
      clusters.push_back({i, i + 1});
    double clustered = test::cluster_revenue(inst, clusters);

    bool ok = ex.status == SearchStatus::proven &&
              std::fabs(revenue - m / 2.0) <= 1e-9 &&
              std::fabs(clustered - (m - 1.0)) <= 1e-9;
    pass = pass && ok;
    if (k == 6) ratio6 = clustered / revenue;
    char buf[96];
    std::snprintf(buf, sizeof buf, " k=%d hide %.1f cluster %.1f", k, revenue,
                  clustered);
    detail += buf;
  }
  pass = pass && ratio6 >= 1.9;
  double elapsed = seconds_since(start);
  char buf[96];
  std::snprintf(buf, sizeof buf, ", ratio(k=6) %.4f (≥1.9), %.0fs", ratio6, elapsed);
  detail += buf;
  report(8, pass, detail);
}

void criterion_9() {
  ExperimentRow row = run_experiment(ExperimentSetup{3, 2, 3}, 100, kMasterSeed);
  std::string rerun = csv_of(row);
  bool pass = !row1_csv.empty() && rerun == row1_csv;
  report(9, pass,
         pass ? "criterion 1 rerun produced byte-identical CSV"
              : "criterion 1 rerun produced different CSV bytes");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", failures);
  return failures;
}
