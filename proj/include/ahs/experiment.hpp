#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "ahs/core.hpp"

namespace ahs {

struct ExperimentSetup {
  int k = 0;
  int cardinality = 2;
  int n = 0;
};

// Averages over seeded random trials. Gains are reported as percentages of
// the trial's sell-separately baseline; a trial whose baseline is zero (a
// probability-zero event under continuous valuations) contributes its
// absolute gain instead and is counted in flagged_trials.
struct ExperimentRow {
  ExperimentSetup setup;
  int trials = 0;
  double tree_pct = 0.0;
  std::optional<double> match_pct;  // empty unless attributes are binary
  double ub_pct = 0.0;
  int opt_count = 0;    // trials where a heuristic met the upper bound
  double var_mean = 0.0;  // surviving variables after pruning
  double hm_mean = 0.0;   // unsplittable bundles with >= 2 hidden attributes
  int flagged_trials = 0;
};

// Trial t draws its instance from stream t of the master seed, so results do
// not depend on the parallel schedule. Every trial asserts that the tree and
// matching gains stay below the relaxation bound.
ExperimentRow run_experiment(const ExperimentSetup& setup, int trials,
                             std::uint64_t master_seed);

void write_csv_header(std::ostream& out);
void write_csv_row(const ExperimentRow& row, std::ostream& out);
void write_table_header(std::ostream& out);
void write_table_row(const ExperimentRow& row, std::ostream& out);

}  // namespace ahs
