#include "ahs/relax.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ahs {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Maximizes c.x subject to x_i + x_j <= 1 for the given pairs and x >= 0.
// Upper bounds x_i <= 1 are implied: every variable passed here appears in at
// least one constraint. Phase II only; the slack basis is feasible and the
// objective is bounded by sum(c).
//
// Pivoting is Dantzig's rule, switching to Bland's rule permanently after a
// run of degenerate pivots so cycling cannot occur.
class DenseSimplex {
 public:
  DenseSimplex(std::vector<Rational> costs, const std::vector<std::pair<int, int>>& rows)
      : n_(static_cast<int>(costs.size())),
        m_(static_cast<int>(rows.size())),
        cost_(std::move(costs)) {
    tableau_.assign(m_, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
    for (int i = 0; i < m_; ++i) {
      tableau_[i][rows[i].first] = 1;
      tableau_[i][rows[i].second] = 1;
      tableau_[i][n_ + i] = 1;
      tableau_[i][n_ + m_] = 1;  // right-hand side
    }
    reduced_.assign(n_ + m_, Rational(0));
    for (int j = 0; j < n_; ++j) reduced_[j] = cost_[j];
    basis_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  void solve() {
    bool bland = false;
    int degenerate_run = 0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      int enter = pick_entering(bland);
      if (enter < 0) return;  // optimal
      int leave = pick_leaving(enter, bland);
      if (leave < 0) throw std::logic_error("relaxation unbounded");
      if (tableau_[leave][n_ + m_] == 0) {
        if (++degenerate_run >= kDegenerateLimit) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
    throw std::logic_error("simplex iteration limit exceeded");
  }

  Rational objective() const { return objective_; }

  std::vector<Rational> assignment() const {
    std::vector<Rational> x(n_, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = tableau_[i][n_ + m_];
    return x;
  }

 private:
  static constexpr int kMaxIterations = 200000;
  static constexpr int kDegenerateLimit = 32;

  int pick_entering(bool bland) const {
    int best = -1;
    for (int j = 0; j < n_ + m_; ++j) {
      if (reduced_[j] <= 0) continue;
      if (bland) return j;
      if (best < 0 || reduced_[j] > reduced_[best]) best = j;
    }
    return best;
  }

  int pick_leaving(int enter, bool bland) const {
    int best = -1;
    Rational best_ratio;
    for (int i = 0; i < m_; ++i) {
      const Rational& a = tableau_[i][enter];
      if (a <= 0) continue;
      Rational ratio = tableau_[i][n_ + m_] / a;
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && bland && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int row, int col) {
    std::vector<Rational>& pr = tableau_[row];
    Rational inv = pr[col];
    for (Rational& v : pr) v /= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      Rational f = tableau_[i][col];
      if (f == 0) continue;
      std::vector<Rational>& ri = tableau_[i];
      for (int j = 0; j <= n_ + m_; ++j) ri[j] -= f * pr[j];
    }
    Rational f = reduced_[col];
    for (int j = 0; j < n_ + m_; ++j) reduced_[j] -= f * pr[j];
    objective_ += f * pr[n_ + m_];
    basis_[row] = col;
  }

  int n_, m_;
  std::vector<Rational> cost_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> reduced_;
  std::vector<int> basis_;
  Rational objective_;
};

// Connected components of the conflict graph; the objective is additive
// across them, so each is solved on its own small tableau.
std::vector<int> components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  return comp;
}

}  // namespace

std::vector<std::int64_t> prune_variable_indices(const BundleLattice& lat,
                                                 const SecondPriceTable& prices,
                                                 const TreeSolution& tree) {
  if (tree.spec != lat.spec())
    throw std::invalid_argument("tree solution does not match lattice");
  std::vector<std::int64_t> out;
  for (std::int64_t b = 0; b < lat.num_bundles(); ++b) {
    if (lat.hidden_count(b) < 1) continue;
    if (prices.second[b] < tree.best_split[b]) continue;
    if (!(prices.gain(b) > 0.0)) continue;
    out.push_back(b);
  }
  return out;
}

std::vector<NaturalBundle> prune_variables(const ProblemInstance& inst,
                                           const TreeSolution& tree) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  std::vector<NaturalBundle> out;
  for (std::int64_t b : prune_variable_indices(lat, prices, tree))
    out.push_back(bundle_from_index(inst.spec(), b));
  return out;
}

LinearProgram build_program(const BundleLattice& lat, const SecondPriceTable& prices,
                            const std::vector<std::int64_t>& survivors) {
  LinearProgram lp;
  int n = static_cast<int>(survivors.size());
  lp.variables.reserve(n);
  lp.weights.reserve(n);
  for (std::int64_t b : survivors) {
    lp.variables.push_back(bundle_from_index(lat.spec(), b));
    lp.weights.push_back(prices.gain(b));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersects(lp.variables[i], lp.variables[j])) lp.conflicts.emplace_back(i, j);
  return lp;
}

LinearProgram build_program(const ProblemInstance& inst,
                            const std::vector<NaturalBundle>& survivors) {
  LinearProgram lp;
  lp.variables = survivors;
  lp.weights.reserve(survivors.size());
  for (const NaturalBundle& b : survivors) lp.weights.push_back(bundle_gain(inst, b));
  int n = static_cast<int>(survivors.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersects(lp.variables[i], lp.variables[j])) lp.conflicts.emplace_back(i, j);
  return lp;
}

RelaxationSolution solve_relaxation(const LinearProgram& lp) {
  int n = static_cast<int>(lp.variables.size());
  if (static_cast<int>(lp.weights.size()) != n)
    throw std::invalid_argument("weights do not match variables");
  for (const auto& [a, b] : lp.conflicts)
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("conflict index out of range");

  std::vector<int> comp = components(n, lp.conflicts);
  int num_comps = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  std::vector<std::vector<int>> members(num_comps);
  for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);
  std::vector<std::vector<std::pair<int, int>>> edges(num_comps);
  for (const auto& [a, b] : lp.conflicts) edges[comp[a]].emplace_back(a, b);

  RelaxationSolution sol;
  sol.assignment.assign(n, 0.0);
  Rational total(0);
  for (int c = 0; c < num_comps; ++c) {
    if (members[c].size() == 1) {
      // Isolated variable: put it at whichever bound pays more.
      int v = members[c][0];
      if (lp.weights[v] > 0.0) {
        sol.assignment[v] = 1.0;
        total += Rational(lp.weights[v]);
      }
      continue;
    }
    std::vector<int> local(n, -1);
    std::vector<Rational> costs;
    for (std::size_t i = 0; i < members[c].size(); ++i) {
      local[members[c][i]] = static_cast<int>(i);
      costs.emplace_back(lp.weights[members[c][i]]);  // exact double -> rational
    }
    std::vector<std::pair<int, int>> rows;
    for (const auto& [a, b] : edges[c]) rows.emplace_back(local[a], local[b]);

    DenseSimplex simplex(std::move(costs), rows);
    simplex.solve();
    total += simplex.objective();
    std::vector<Rational> x = simplex.assignment();
    for (std::size_t i = 0; i < members[c].size(); ++i)
      sol.assignment[members[c][i]] = x[i].convert_to<double>();
  }
  sol.gain = total.convert_to<double>();
  return sol;
}

double upper_bound_gain(const BundleLattice& lat, const SecondPriceTable& prices,
                        const TreeSolution& tree) {
  std::vector<std::int64_t> survivors = prune_variable_indices(lat, prices, tree);
  LinearProgram lp = build_program(lat, prices, survivors);
  return solve_relaxation(lp).gain;
}

double upper_bound_revenue(const ProblemInstance& inst) {
  BundleLattice lat(inst.spec());
  SecondPriceTable prices = second_price_table(lat, inst);
  TreeSolution tree = tree_dp(lat, prices);
  return prices.baseline() + upper_bound_gain(lat, prices, tree);
}

void write_lp_text(const LinearProgram& lp, std::ostream& os) {
  os << "\\ attribute-hiding relaxation\n";
  for (std::size_t i = 0; i < lp.variables.size(); ++i) {
    os << "\\ z" << i << " =";
    for (int v : lp.variables[i].pattern) {
      if (v == kHidden)
        os << " ?";
      else
        os << ' ' << v;
    }
    os << '\n';
  }
  os << "Maximize\n obj:";
  if (lp.variables.empty()) os << " 0 empty";
  for (std::size_t i = 0; i < lp.variables.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lp.weights[i]);
    os << (i == 0 ? " " : " + ") << buf << " z" << i;
  }
  os << "\nSubject To\n";
  for (std::size_t c = 0; c < lp.conflicts.size(); ++c)
    os << " c" << c << ": z" << lp.conflicts[c].first << " + z"
       << lp.conflicts[c].second << " <= 1\n";
  os << "Bounds\n";
  for (std::size_t i = 0; i < lp.variables.size(); ++i)
    os << " 0 <= z" << i << " <= 1\n";
  os << "End\n";
}

}  // namespace ahs
