#include "ahs/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace ahs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int parity(std::int64_t instantiation_idx) {
  int p = 0;
  while (instantiation_idx) {
    p ^= static_cast<int>(instantiation_idx & 1);
    instantiation_idx >>= 1;
  }
  return p;
}

}  // namespace

MatchGraph build_match_graph(const BundleLattice& lat, const SecondPriceTable& prices) {
  const AttributeSpec& spec = lat.spec();
  if (!spec.all_binary())
    throw std::invalid_argument(
        "matching heuristic requires binary attributes (every cardinality 2)");

  MatchGraph g;
  g.num_vertices = spec.num_instantiations();
  // For binary cardinalities the unit-bundle index of an instantiation uses
  // the same digits, and hiding attribute a adds 2 * bundle_stride(a) to a
  // digit that was 0.
  for (std::int64_t u = 0; u < g.num_vertices; ++u) {
    std::int64_t unit = 0;
    std::int64_t rest = u;
    for (int i = spec.k() - 1; i >= 0; --i) {
      unit += (rest & 1) * lat.bundle_stride(i);
      rest >>= 1;
    }
    for (int a = 0; a < spec.k(); ++a) {
      if (u & lat.inst_stride(a)) continue;  // enumerate each pair once, from 0 side
      std::int64_t v = u + lat.inst_stride(a);
      std::int64_t merged = unit + 2 * lat.bundle_stride(a);
      double w = prices.gain(merged);
      if (w > 0.0) g.edges.push_back({u, v, a, w});
    }
  }
  return g;
}

MatchGraph build_match_graph(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  return build_match_graph(lat, second_price_table(lat, inst));
}

MatchingResult max_weight_matching(const AttributeSpec& spec, const MatchGraph& graph) {
  std::int64_t m = graph.num_vertices;
  if (m != spec.num_instantiations())
    throw std::invalid_argument("match graph does not fit attribute spec");

  struct Arc {
    std::int64_t to;
    double w;
  };
  std::vector<std::vector<Arc>> adj(m);
  double max_w = 0.0;
  for (const MatchEdge& e : graph.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= m || e.v >= m)
      throw std::invalid_argument("match edge endpoint out of range");
    if (parity(e.u) == parity(e.v))
      throw std::invalid_argument("match edge endpoints have equal parity");
    // Orient left -> right with left = even parity.
    if (parity(e.u) == 0)
      adj[e.u].push_back({e.v, e.weight});
    else
      adj[e.v].push_back({e.u, e.weight});
    max_w = std::max(max_w, e.weight);
  }

  std::vector<std::int64_t> match(m, -1);
  // Potentials keep reduced arc costs nonnegative: cost of an unmatched
  // left->right arc is -w, of a matched right->left arc +w.
  std::vector<double> pot(m, 0.0);
  for (std::int64_t u = 0; u < m; ++u)
    if (parity(u) == 0) pot[u] = max_w;
  const double pot_source = max_w;
  double pot_sink = 0.0;

  std::vector<double> dist(m);
  std::vector<std::int64_t> parent(m);
  using Item = std::pair<double, std::int64_t>;

  for (;;) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), std::int64_t{-1});
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    for (std::int64_t u = 0; u < m; ++u) {
      if (parity(u) != 0 || match[u] >= 0 || adj[u].empty()) continue;
      dist[u] = std::max(0.0, pot_source - pot[u]);
      queue.push({dist[u], u});
    }

    double dist_sink = kInf;
    std::int64_t sink_via = -1;
    while (!queue.empty()) {
      auto [d, x] = queue.top();
      queue.pop();
      if (d > dist[x]) continue;
      if (parity(x) == 0) {
        for (const Arc& arc : adj[x]) {
          if (match[x] == arc.to) continue;
          double rc = std::max(0.0, -arc.w + pot[x] - pot[arc.to]);
          if (d + rc < dist[arc.to]) {
            dist[arc.to] = d + rc;
            parent[arc.to] = x;
            queue.push({dist[arc.to], arc.to});
          }
        }
      } else {
        if (match[x] < 0) {
          double rc = std::max(0.0, pot[x] - pot_sink);
          if (d + rc < dist_sink) {
            dist_sink = d + rc;
            sink_via = x;
          }
          continue;
        }
        std::int64_t u = match[x];
        double w = 0.0;
        for (const Arc& arc : adj[u])
          if (arc.to == x) {
            w = arc.w;
            break;
          }
        double rc = std::max(0.0, w + pot[x] - pot[u]);
        if (d + rc < dist[u]) {
          dist[u] = d + rc;
          parent[u] = x;
          queue.push({dist[u], u});
        }
      }
    }

    if (sink_via < 0) break;
    double true_cost = dist_sink + pot_sink - pot_source;
    if (true_cost >= -1e-12) break;  // no augmenting path with positive gain

    for (std::int64_t x = 0; x < m; ++x)
      if (dist[x] < kInf) pot[x] += std::min(dist[x], dist_sink);
    pot_sink += dist_sink;

    // Flip matched status along the path back from the sink.
    std::int64_t v = sink_via;
    while (v >= 0) {
      std::int64_t u = parent[v];
      std::int64_t prev = match[u];
      match[u] = v;
      match[v] = u;
      v = prev;
    }
  }

  MatchingResult result;
  for (std::int64_t u = 0; u < m; ++u) {
    if (parity(u) != 0 || match[u] < 0) continue;
    Instantiation a = instantiation_from_index(spec, u);
    Instantiation b = instantiation_from_index(spec, match[u]);
    NaturalBundle merged;
    merged.pattern = a.coords;
    for (int i = 0; i < spec.k(); ++i)
      if (a.coords[i] != b.coords[i]) merged.pattern[i] = kHidden;
    result.scheme.bundles.push_back(std::move(merged));
  }
  canonicalize(spec, result.scheme);
  for (const MatchEdge& e : graph.edges) {
    std::int64_t left = parity(e.u) == 0 ? e.u : e.v;
    std::int64_t right = left == e.u ? e.v : e.u;
    if (match[left] == right) result.gain += e.weight;
  }
  return result;
}

MatchingResult max_weight_matching(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  MatchGraph g = build_match_graph(lat, second_price_table(lat, inst));
  return max_weight_matching(inst.spec(), g);
}

}  // namespace ahs
