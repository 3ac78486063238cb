#include "ahs/tree.hpp"

#include <limits>
#include <stdexcept>

#include "ahs/par.hpp"

namespace ahs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sizes(const BundleLattice& lat, const SecondPriceTable& prices) {
  if (static_cast<std::int64_t>(prices.second.size()) != lat.num_bundles())
    throw std::invalid_argument("price table does not match lattice");
}

// Max over hidden attributes of the children's t sum; kNegInf for units.
double best_split_of(const BundleLattice& lat, const std::vector<double>& t,
                     std::int64_t b, const std::vector<int>& digits) {
  const AttributeSpec& spec = lat.spec();
  double best = kNegInf;
  for (int i = 0; i < spec.k(); ++i) {
    if (digits[i] != spec.cardinality(i)) continue;
    std::int64_t stride = lat.bundle_stride(i);
    double sum = 0.0;
    for (int v = spec.cardinality(i); v >= 1; --v) sum += t[b - v * stride];
    if (sum > best) best = sum;
  }
  return best;
}

// Emit the kept bundles of the optimal scheme, splitting along the lowest
// attribute that attains the best split.
void extract(const BundleLattice& lat, const SecondPriceTable& prices,
             const TreeSolution& sol, std::vector<int>& digits,
             HidingScheme& out) {
  const AttributeSpec& spec = lat.spec();
  std::int64_t b = lat.index_of_digits(digits);
  if (lat.first_hidden_attr(b) < 0) return;  // sold separately
  if (prices.second[b] >= sol.best_split[b]) {
    NaturalBundle kept;
    kept.pattern = digits;
    for (int i = 0; i < spec.k(); ++i)
      if (digits[i] == spec.cardinality(i)) kept.pattern[i] = kHidden;
    out.bundles.push_back(std::move(kept));
    return;
  }
  for (int i = 0; i < spec.k(); ++i) {
    if (digits[i] != spec.cardinality(i)) continue;
    std::int64_t stride = lat.bundle_stride(i);
    double sum = 0.0;
    for (int v = spec.cardinality(i); v >= 1; --v) sum += sol.t[b - v * stride];
    if (sum == sol.best_split[b]) {
      for (int v = 0; v < spec.cardinality(i); ++v) {
        digits[i] = v;
        extract(lat, prices, sol, digits, out);
      }
      digits[i] = spec.cardinality(i);
      return;
    }
  }
  throw std::logic_error("no attribute attains the recorded best split");
}

TreeSolution tree_dp_impl(const BundleLattice& lat, const SecondPriceTable& prices,
                          bool parallel) {
  check_sizes(lat, prices);
  const AttributeSpec& spec = lat.spec();
  std::int64_t nb = lat.num_bundles();

  TreeSolution sol{spec, {}, {}, {}, 0.0};
  sol.t.assign(nb, 0.0);
  sol.best_split.assign(nb, kNegInf);

  if (!parallel) {
    std::vector<int> digits(spec.k(), 0);
    for (std::int64_t b = 0; b < nb; ++b) {
      if (lat.first_hidden_attr(b) < 0) {
        sol.t[b] = prices.second[b];
      } else {
        double best = best_split_of(lat, sol.t, b, digits);
        sol.best_split[b] = best;
        sol.t[b] = std::max(prices.second[b], best);
      }
      int pos = spec.k() - 1;
      while (pos >= 0 && digits[pos] == spec.cardinality(pos)) digits[pos--] = 0;
      if (pos >= 0) ++digits[pos];
    }
  } else {
    std::vector<int> digits;
    for (int h = 0; h <= spec.k(); ++h) {
      const auto& layer = lat.layers()[h];
      std::int64_t count = static_cast<std::int64_t>(layer.size());
#pragma omp parallel for schedule(static) private(digits)
      for (std::int64_t idx = 0; idx < count; ++idx) {
        std::int64_t b = layer[idx];
        if (h == 0) {
          sol.t[b] = prices.second[b];
        } else {
          lat.decode(b, digits);
          double best = best_split_of(lat, sol.t, b, digits);
          sol.best_split[b] = best;
          sol.t[b] = std::max(prices.second[b], best);
        }
      }
    }
  }

  std::vector<int> digits(spec.k());
  for (int i = 0; i < spec.k(); ++i) digits[i] = spec.cardinality(i);
  extract(lat, prices, sol, digits, sol.optimal_scheme);
  canonicalize(spec, sol.optimal_scheme);
  sol.optimal_gain = sol.t[lat.root()] - prices.baseline();
  return sol;
}

}  // namespace

TreeSolution tree_dp(const BundleLattice& lat, const SecondPriceTable& prices) {
  return tree_dp_impl(lat, prices, true);
}

TreeSolution tree_dp_serial(const BundleLattice& lat, const SecondPriceTable& prices) {
  return tree_dp_impl(lat, prices, false);
}

TreeSolution tree_dp(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  return tree_dp(lat, prices);
}

std::int64_t hm_count(const BundleLattice& lat, const SecondPriceTable& prices,
                      const TreeSolution& tree) {
  check_sizes(lat, prices);
  if (tree.spec != lat.spec())
    throw std::invalid_argument("tree solution does not match lattice");
  std::int64_t count = 0;
  for (std::int64_t b = 0; b < lat.num_bundles(); ++b)
    if (lat.hidden_count(b) >= 2 && prices.second[b] >= tree.best_split[b]) ++count;
  return count;
}

std::int64_t hm_count(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  return hm_count(lat, prices, tree_dp(lat, prices));
}

}  // namespace ahs
