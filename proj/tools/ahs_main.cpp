// Command-line driver for the attribute hiding library: solve an instance
// with one of the solvers, reproduce the random experiments, and generate or
// verify the constructed instance families.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "ahs/exact.hpp"
#include "ahs/experiment.hpp"
#include "ahs/gadgets.hpp"
#include "ahs/io.hpp"
#include "ahs/matching.hpp"
#include "ahs/relax.hpp"
#include "ahs/tree.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int run_solve(const std::string& input, const std::string& method,
              std::int64_t node_budget, const std::string& lp_out) {
  ahs::ProblemInstance inst = ahs::read_instance_json_file(input);
  double baseline = ahs::baseline_revenue(inst);

  if (method == "tree") {
    ahs::TreeSolution sol = ahs::tree_dp(inst);
    std::cout << "gain: " << fmt(sol.optimal_gain) << '\n'
              << "revenue: " << fmt(baseline + sol.optimal_gain) << '\n'
              << "scheme: " << ahs::scheme_to_json(inst.spec(), sol.optimal_scheme)
              << '\n';
    return 0;
  }
  if (method == "match") {
    ahs::MatchingResult sol = ahs::max_weight_matching(inst);
    std::cout << "gain: " << fmt(sol.gain) << '\n'
              << "revenue: " << fmt(baseline + sol.gain) << '\n'
              << "scheme: " << ahs::scheme_to_json(inst.spec(), sol.scheme) << '\n';
    return 0;
  }
  if (method == "ub") {
    ahs::BundleLattice lat(inst.spec());
    ahs::SecondPriceTable prices = ahs::second_price_table(lat, inst);
    ahs::TreeSolution tree = ahs::tree_dp(lat, prices);
    ahs::LinearProgram lp = ahs::build_program(
        lat, prices, ahs::prune_variable_indices(lat, prices, tree));
    if (!lp_out.empty()) {
      std::ofstream out = open_out(lp_out);
      ahs::write_lp_text(lp, out);
    }
    double gain = ahs::solve_relaxation(lp).gain;
    std::cout << "gain: " << fmt(gain) << '\n'
              << "revenue: " << fmt(baseline + gain) << '\n'
              << "variables: " << lp.variables.size() << '\n'
              << "constraints: " << lp.conflicts.size() << '\n';
    return 0;
  }
  if (method == "exact") {
    ahs::ExactResult sol = ahs::exact_optimum(inst, node_budget);
    std::cout << "gain: " << fmt(sol.gain) << '\n'
              << "revenue: " << fmt(baseline + sol.gain) << '\n'
              << "scheme: " << ahs::scheme_to_json(inst.spec(), sol.scheme) << '\n'
              << "status: "
              << (sol.status == ahs::SearchStatus::proven ? "proven"
                                                          : "budget_exhausted")
              << '\n'
              << "nodes: " << sol.nodes << '\n';
    return 0;
  }
  throw CLI::ValidationError("method", "unknown method " + method);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revenue-improving attribute hiding for second-price auctions"};
  app.require_subcommand(1);

  // solve
  std::string solve_input, solve_method = "tree", solve_lp_out;
  std::int64_t node_budget = ahs::kDefaultNodeBudget;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance JSON file");
  solve->add_option("input", solve_input, "instance JSON path")->required();
  solve->add_option("--method", solve_method, "tree | match | ub | exact")
      ->check(CLI::IsMember({"tree", "match", "ub", "exact"}));
  solve->add_option("--node-budget", node_budget, "search node budget for exact");
  solve->add_option("--lp-out", solve_lp_out, "dump the relaxation in LP format (ub)");

  // experiment
  ahs::ExperimentSetup setup;
  int trials = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string csv_path;
  CLI::App* experiment =
      app.add_subcommand("experiment", "average solver quality over random trials");
  experiment->add_option("--k", setup.k, "number of attributes")->required();
  experiment->add_option("--cardinality", setup.cardinality, "values per attribute");
  experiment->add_option("--n", setup.n, "number of bidders")->required();
  experiment->add_option("--trials", trials, "number of random trials");
  experiment->add_option("--seed", seed, "master seed");
  experiment->add_option("--csv", csv_path, "append a CSV row to this file");

  // gen-random
  int gr_k = 0, gr_n = 0, gr_card = 2;
  std::uint64_t gr_seed = kDefaultSeed;
  std::string gr_out;
  CLI::App* gen_random =
      app.add_subcommand("gen-random", "write a random instance JSON");
  gen_random->add_option("--k", gr_k, "number of attributes")->required();
  gen_random->add_option("--cardinality", gr_card, "values per attribute");
  gen_random->add_option("--n", gr_n, "number of bidders")->required();
  gen_random->add_option("--seed", gr_seed, "generator seed");
  gen_random->add_option("--out", gr_out, "output path (default stdout)");

  // gen-sat
  std::string gs_formula, gs_out;
  double gs_L = 0.0, gs_eps = 0.0;
  CLI::App* gen_sat = app.add_subcommand(
      "gen-sat", "build the hardness instance for a one-in-three formula");
  gen_sat->add_option("formula", gs_formula, "formula file (p cnf E D)")->required();
  gen_sat->add_option("--L", gs_L, "base valuation (default D+1)");
  gen_sat->add_option("--eps", gs_eps, "discount (default 1/(2D))");
  gen_sat->add_option("--out", gs_out, "output path (default stdout)");

  // gen-gap
  int gg_k = 0;
  std::string gg_out;
  CLI::App* gen_gap =
      app.add_subcommand("gen-gap", "write the clustering-gap instance");
  gen_gap->add_option("--k", gg_k, "number of binary attributes")->required();
  gen_gap->add_option("--out", gg_out, "output path (default stdout)");

  // verify-reduction
  std::string vr_formula;
  bool vr_full = false;
  double vr_L = 0.0, vr_eps = 0.0;
  std::int64_t vr_samples = 100000;
  CLI::App* verify = app.add_subcommand(
      "verify-reduction", "check the gain structure of a hardness instance");
  verify->add_option("formula", vr_formula, "formula file (p cnf E D)")->required();
  verify->add_flag("--full-sweep", vr_full, "check every bundle");
  verify->add_option("--samples", vr_samples, "bundles to sample without full sweep");
  verify->add_option("--L", vr_L, "base valuation (default D+1)");
  verify->add_option("--eps", vr_eps, "discount (default 1/(2D))");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_input, solve_method, node_budget, solve_lp_out);

    if (*experiment) {
      ahs::ExperimentRow row = ahs::run_experiment(setup, trials, seed);
      ahs::write_table_header(std::cout);
      ahs::write_table_row(row, std::cout);
      if (row.flagged_trials > 0)
        std::cerr << "warning: " << row.flagged_trials
                  << " trial(s) had a zero baseline; absolute gains used\n";
      if (!csv_path.empty()) {
        bool fresh = !std::ifstream(csv_path).good();
        std::ofstream out(csv_path, std::ios::app);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        if (fresh) ahs::write_csv_header(out);
        ahs::write_csv_row(row, out);
      }
      return 0;
    }

    if (*gen_random) {
      ahs::ProblemInstance inst =
          ahs::random_instance(gr_k, gr_card, gr_n, gr_seed);
      if (gr_out.empty()) {
        ahs::write_instance_json(inst, std::cout);
      } else {
        std::ofstream out = open_out(gr_out);
        ahs::write_instance_json(inst, out);
      }
      return 0;
    }

    if (*gen_sat) {
      ahs::OneInThreeSatInstance sat = ahs::read_sat_text_file(gs_formula);
      ahs::ReductionParams params = ahs::ReductionParams::defaults(sat);
      if (gs_L > 0.0) params.L = gs_L;
      if (gs_eps > 0.0) params.eps = gs_eps;
      ahs::ReductionInstance red = ahs::reduction_instance(sat, params);
      std::cerr << "k=" << red.instance.spec().k()
                << " m=" << red.instance.spec().num_instantiations()
                << " bidders=" << red.instance.num_bidders()
                << " helpful=" << red.helpful.size()
                << " target-gain=" << fmt(red.target_gain()) << '\n';
      if (gs_out.empty()) {
        ahs::write_instance_json(red.instance, std::cout);
      } else {
        std::ofstream out = open_out(gs_out);
        ahs::write_instance_json(red.instance, out);
      }
      return 0;
    }

    if (*gen_gap) {
      ahs::ProblemInstance inst = ahs::gap_instance(gg_k);
      if (gg_out.empty()) {
        ahs::write_instance_json(inst, std::cout);
      } else {
        std::ofstream out = open_out(gg_out);
        ahs::write_instance_json(inst, out);
      }
      return 0;
    }

    if (*verify) {
      ahs::OneInThreeSatInstance sat = ahs::read_sat_text_file(vr_formula);
      ahs::ReductionParams params = ahs::ReductionParams::defaults(sat);
      if (vr_L > 0.0) params.L = vr_L;
      if (vr_eps > 0.0) params.eps = vr_eps;
      ahs::ReductionInstance red = ahs::reduction_instance(sat, params);
      ahs::VerifyOptions options;
      options.full_sweep = vr_full;
      options.sample_count = vr_samples;
      ahs::VerifyReport report = ahs::verify_reduction(red, options);
      std::cout << "helpful: " << report.helpful_checked
                << "\nintersecting: " << report.intersecting_checked
                << "\nsampled: " << report.sampled_checked
                << "\nviolations: " << report.violations << '\n';
      for (const std::string& msg : report.messages) std::cout << "  " << msg << '\n';
      std::cout << (report.ok ? "OK" : "FAILED") << '\n';
      return report.ok ? 0 : 1;
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;  // unreadable or malformed input
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
