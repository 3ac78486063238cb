#include "ahs/exact.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "ahs/matching.hpp"

namespace ahs {

namespace {

// Fixed-width bitset over candidate indices.
class CandidateSet {
 public:
  explicit CandidateSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

  void insert(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(int i) const {
    return words_[i >> 6] >> (i & 63) & 1;
  }
  void subtract(const CandidateSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  }
  void intersect(const CandidateSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  }
  bool intersects(const CandidateSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool subset_of(const CandidateSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool empty() const {
    for (std::uint64_t w : words_) if (w) return false;
    return true;
  }
  // Lowest member >= from, or -1.
  int next(int from) const {
    for (int i = from; i < n_; ++i) {
      std::uint64_t w = words_[i >> 6] >> (i & 63);
      if (w == 0) {
        i |= 63;
        continue;
      }
      int bit = std::countr_zero(w);
      return i + bit;
    }
    return -1;
  }

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

struct Searcher {
  int n = 0;
  std::vector<double> weight;          // descending
  std::vector<CandidateSet> neighbors;
  std::int64_t budget = 0;
  std::int64_t nodes = 0;
  bool exhausted = false;
  double best_gain = 0.0;
  std::vector<int> best_set;
  std::vector<int> chosen;

  // Pair-leaf solver: a candidate hiding one binary attribute covers exactly
  // two instantiations, and two such candidates conflict exactly when they
  // share one. A residual set made only of them is therefore an edge set, and
  // its best independent subset is a maximum weight matching.
  const AttributeSpec* spec = nullptr;
  std::int64_t num_instantiations = 0;
  CandidateSet pair_mask{0};
  std::vector<MatchEdge> pair_edge;    // valid where pair_mask holds
  std::unordered_map<std::int64_t, int> candidate_of_bundle;
  std::vector<std::int64_t> bundle_id;

  bool solve_pair_leaf(double gain, const CandidateSet& remaining) {
    if (!spec || !remaining.subset_of(pair_mask)) return false;
    MatchGraph graph;
    graph.num_vertices = num_instantiations;
    for (int v = remaining.next(0); v >= 0; v = remaining.next(v + 1))
      graph.edges.push_back(pair_edge[v]);
    MatchingResult matched = max_weight_matching(*spec, graph);
    if (gain + matched.gain > best_gain) {
      best_gain = gain + matched.gain;
      best_set = chosen;
      for (const NaturalBundle& b : matched.scheme.bundles)
        best_set.push_back(candidate_of_bundle.at(bundle_index(*spec, b)));
    }
    return true;
  }

  // Partition the remaining candidates into cliques greedily; each clique
  // contributes at most its heaviest member, and members are visited heaviest
  // first, so the sum of first members bounds the remaining gain.
  double clique_bound(const CandidateSet& remaining) const {
    double bound = 0.0;
    std::vector<CandidateSet> open;  // common neighborhoods of open cliques
    for (int v = remaining.next(0); v >= 0; v = remaining.next(v + 1)) {
      bool placed = false;
      for (CandidateSet& clique : open) {
        if (!clique.contains(v)) continue;
        clique.intersect(neighbors[v]);
        placed = true;
        break;
      }
      if (!placed) {
        bound += weight[v];
        open.push_back(neighbors[v]);
      }
    }
    return bound;
  }

  void search(double gain, CandidateSet remaining) {
    ++nodes;
    if (nodes > budget) {
      exhausted = true;
      return;
    }
    if (gain > best_gain) {
      best_gain = gain;
      best_set = chosen;
    }
    int v = remaining.next(0);
    if (v < 0) return;
    if (gain + clique_bound(remaining) <= best_gain) return;
    if (solve_pair_leaf(gain, remaining)) return;

    CandidateSet included = remaining;
    included.erase(v);
    included.subtract(neighbors[v]);
    chosen.push_back(v);
    search(gain + weight[v], std::move(included));
    chosen.pop_back();
    if (exhausted) return;

    remaining.erase(v);
    search(gain, std::move(remaining));
  }
};

}  // namespace

ExactResult exact_optimum(const BundleLattice& lat, const SecondPriceTable& prices,
                          const TreeSolution& tree, std::int64_t node_budget) {
  if (node_budget < 1) throw std::invalid_argument("node budget must be positive");
  std::vector<std::int64_t> survivors = prune_variable_indices(lat, prices, tree);
  int n = static_cast<int>(survivors.size());

  // Branch heaviest first; ties stay in canonical bundle order.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return prices.gain(survivors[a]) > prices.gain(survivors[b]);
  });

  const AttributeSpec& spec = lat.spec();
  bool all_binary = true;
  for (int a = 0; a < spec.k(); ++a) all_binary = all_binary && spec.cardinality(a) == 2;

  std::vector<NaturalBundle> bundles(n);
  Searcher s;
  s.n = n;
  s.budget = node_budget;
  s.weight.resize(n);
  s.neighbors.assign(n, CandidateSet(n));
  s.pair_mask = CandidateSet(n);
  s.pair_edge.resize(n);
  s.bundle_id.resize(n);
  if (all_binary) {
    s.spec = &spec;
    s.num_instantiations = spec.num_instantiations();
  }
  for (int i = 0; i < n; ++i) {
    bundles[i] = bundle_from_index(lat.spec(), survivors[order[i]]);
    s.weight[i] = prices.gain(survivors[order[i]]);
    s.bundle_id[i] = survivors[order[i]];
    s.candidate_of_bundle.emplace(survivors[order[i]], i);
    if (all_binary && hidden_count(bundles[i]) == 1) {
      int attr = 0;
      Instantiation lo{bundles[i].pattern}, hi{bundles[i].pattern};
      for (int a = 0; a < spec.k(); ++a)
        if (bundles[i].pattern[a] == kHidden) {
          attr = a;
          lo.coords[a] = 0;
          hi.coords[a] = 1;
        }
      s.pair_mask.insert(i);
      s.pair_edge[i] = MatchEdge{instantiation_index(spec, lo),
                                 instantiation_index(spec, hi), attr, s.weight[i]};
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersects(bundles[i], bundles[j])) {
        s.neighbors[i].insert(j);
        s.neighbors[j].insert(i);
      }

  CandidateSet all(n);
  for (int i = 0; i < n; ++i) all.insert(i);
  s.search(0.0, std::move(all));

  ExactResult result;
  result.gain = s.best_gain;
  result.nodes = s.nodes;
  result.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::proven;
  for (int i : s.best_set) result.scheme.bundles.push_back(bundles[i]);
  canonicalize(lat.spec(), result.scheme);
  return result;
}

ExactResult exact_optimum(const ProblemInstance& inst, std::int64_t node_budget) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  TreeSolution tree = tree_dp(lat, prices);
  return exact_optimum(lat, prices, tree, node_budget);
}

BruteForceResult brute_force_optimum(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  TreeSolution tree = tree_dp(lat, prices);
  std::vector<std::int64_t> survivors = prune_variable_indices(lat, prices, tree);
  int n = static_cast<int>(survivors.size());
  if (n > kBruteForceCap)
    throw std::invalid_argument(
        "too many pruned candidates for brute force; use exact_optimum");

  std::vector<NaturalBundle> bundles(n);
  std::vector<double> weight(n);
  for (int i = 0; i < n; ++i) {
    bundles[i] = bundle_from_index(lat.spec(), survivors[i]);
    weight[i] = prices.gain(survivors[i]);
  }

  BruteForceResult best;
  std::vector<int> chosen;
  // Depth-first over candidates in canonical order; every independent subset
  // is visited.
  auto recurse = [&](auto&& self, int from, double gain) -> void {
    if (gain > best.gain) {
      best.gain = gain;
      best.scheme.bundles.clear();
      for (int i : chosen) best.scheme.bundles.push_back(bundles[i]);
    }
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : chosen)
        if (intersects(bundles[u], bundles[v])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(v);
      self(self, v + 1, gain + weight[v]);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, 0.0);
  canonicalize(inst.spec(), best.scheme);
  return best;
}

}  // namespace ahs
