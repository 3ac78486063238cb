#include "ahs/gadgets.hpp"

#include <cstdio>
#include <stdexcept>

#include "ahs/rng.hpp"

namespace ahs {

namespace {

int ceil_log2(int x) {
  int bits = 0;
  while ((1 << bits) < x) ++bits;
  return bits;
}

// Big-endian bits of `value` into pattern positions [pos, pos + width).
void put_bits(std::vector<int>& pattern, int pos, int width, int value) {
  for (int j = 0; j < width; ++j)
    pattern[pos + width - 1 - j] = (value >> j) & 1;
}

}  // namespace

void OneInThreeSatInstance::validate() const {
  if (num_variables < 1) throw std::invalid_argument("formula needs variables");
  if (clauses.empty()) throw std::invalid_argument("formula needs clauses");
  for (const auto& c : clauses) {
    for (int v : c)
      if (v < 1 || v > num_variables)
        throw std::invalid_argument("clause variable out of range");
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
      throw std::invalid_argument("clause variables must be distinct");
  }
}

int OneInThreeSatInstance::occurrences(int e) const {
  int count = 0;
  for (const auto& c : clauses)
    for (int v : c)
      if (v == e) ++count;
  return count;
}

bool one_in_three_satisfiable(const OneInThreeSatInstance& sat) {
  sat.validate();
  if (sat.num_variables > 30)
    throw std::invalid_argument("satisfiability check enumerates 2^E assignments");
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << sat.num_variables); ++mask) {
    bool ok = true;
    for (const auto& c : sat.clauses) {
      int trues = (mask >> (c[0] - 1) & 1) + (mask >> (c[1] - 1) & 1) +
                  (mask >> (c[2] - 1) & 1);
      if (trues != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

ProblemInstance random_instance(int k, int cardinality, int n, std::uint64_t seed,
                                std::uint64_t stream) {
  if (n < 2) throw std::invalid_argument("need at least two bidders");
  AttributeSpec spec(std::vector<int>(k, cardinality));
  Philox4x32 rng(seed, stream);
  std::vector<std::vector<double>> rows(n);
  for (auto& row : rows) {
    row.resize(spec.num_instantiations());
    for (double& v : row) v = rng.next_u01();
  }
  return ProblemInstance(std::move(spec), std::move(rows));
}

ReductionParams ReductionParams::defaults(const OneInThreeSatInstance& sat) {
  sat.validate();
  double D = sat.num_clauses();
  return ReductionParams{D + 1.0, 1.0 / (2.0 * D)};
}

void ReductionParams::validate(const OneInThreeSatInstance& sat) const {
  double D = sat.num_clauses();
  if (!(L > D)) throw std::invalid_argument("reduction needs L > D");
  if (!(eps > 0.0) || !(eps < 1.0 / D))
    throw std::invalid_argument("reduction needs 0 < eps < 1/D");
}

double ReductionInstance::target_gain() const {
  double D = 0;
  for (const HelpfulBundle& h : helpful)
    if (h.family >= 5) D += 1;
  D /= 3;  // families 5..7 contribute one bundle each per clause
  return 6.0 * D - 2.0 * D * params.eps;
}

ReductionInstance reduction_instance(const OneInThreeSatInstance& sat,
                                     const ReductionParams& params) {
  sat.validate();
  params.validate(sat);
  int E = sat.num_variables;
  int D = sat.num_clauses();
  int we = ceil_log2(E);
  int wd = ceil_log2(D);
  int k = we + wd + 11;
  AttributeSpec spec(std::vector<int>(k, 2));

  int sel = we + wd;        // three selector attributes
  int pairs = we + wd + 3;  // four pairs of attributes

  // Every pattern starts from the inactive skeleton: pairs at (0,1), the
  // rest hidden. Variables and clauses are encoded zero-based so that values
  // E and D fit their stated widths when they are powers of two.
  auto skeleton = [&] {
    std::vector<int> p(k, kHidden);
    for (int q = 0; q < 4; ++q) {
      p[pairs + 2 * q] = 0;
      p[pairs + 2 * q + 1] = 1;
    }
    return p;
  };

  std::vector<HelpfulBundle> helpful;
  for (int d = 1; d <= D; ++d)
    for (int i = 1; i <= 3; ++i) {
      int e = sat.clauses[d - 1][i - 1];
      HelpfulBundle h;
      h.bundle.pattern = skeleton();
      put_bits(h.bundle.pattern, 0, we, e - 1);
      put_bits(h.bundle.pattern, we, wd, d - 1);
      h.bundle.pattern[sel + i - 1] = 0;
      h.intended_gain = 1.0;
      h.family = i;
      h.e = e;
      h.d = d;
      helpful.push_back(std::move(h));
    }
  for (int e = 1; e <= E; ++e) {
    int occ = sat.occurrences(e);
    if (occ == 0) continue;
    HelpfulBundle h;
    h.bundle.pattern = skeleton();
    put_bits(h.bundle.pattern, 0, we, e - 1);
    h.bundle.pattern[sel] = 0;
    h.bundle.pattern[sel + 1] = 0;
    h.bundle.pattern[sel + 2] = 0;
    h.bundle.pattern[pairs] = kHidden;
    h.bundle.pattern[pairs + 1] = kHidden;
    h.intended_gain = occ * (1.0 - params.eps);
    h.family = 4;
    h.e = e;
    helpful.push_back(std::move(h));
  }
  for (int family = 5; family <= 7; ++family)
    for (int d = 1; d <= D; ++d) {
      HelpfulBundle h;
      h.bundle.pattern = skeleton();
      put_bits(h.bundle.pattern, we, wd, d - 1);
      h.bundle.pattern[sel + family - 5] = 1;
      int q = family - 4;  // pair q goes hidden
      h.bundle.pattern[pairs + 2 * q] = kHidden;
      h.bundle.pattern[pairs + 2 * q + 1] = kHidden;
      h.intended_gain = 3.0;
      h.family = family;
      h.d = d;
      helpful.push_back(std::move(h));
    }

  std::vector<std::vector<double>> rows;
  rows.emplace_back(spec.num_instantiations(), params.L);
  rows.emplace_back(spec.num_instantiations(), params.L);
  for (const HelpfulBundle& h : helpful) {
    std::vector<double> inside(spec.num_instantiations(), 0.0);
    for (const Instantiation& w : enumerate_instantiations(spec, h.bundle))
      inside[instantiation_index(spec, w)] = params.L;
    for (int special = 0; special <= 1; ++special) {
      Instantiation w;
      w.coords = h.bundle.pattern;
      for (int& c : w.coords)
        if (c == kHidden) c = special;
      std::vector<double> row = inside;
      row[instantiation_index(spec, w)] = h.intended_gain + params.L;
      rows.push_back(std::move(row));
    }
  }

  return ReductionInstance{ProblemInstance(std::move(spec), std::move(rows)),
                           std::move(helpful), params};
}

ReductionInstance reduction_instance(const OneInThreeSatInstance& sat) {
  return reduction_instance(sat, ReductionParams::defaults(sat));
}

namespace {

void report_violation(VerifyReport& report, const AttributeSpec& spec,
                      std::int64_t b, double gain, double intended) {
  ++report.violations;
  if (report.messages.size() >= 20) return;
  NaturalBundle bundle = bundle_from_index(spec, b);
  std::string pattern;
  for (int v : bundle.pattern) pattern += v == kHidden ? '?' : char('0' + v);
  char buf[128];
  std::snprintf(buf, sizeof buf, " gain %.12g, expected %.12g", gain, intended);
  report.messages.push_back("bundle " + pattern + buf);
}

bool gain_matches(double gain, double intended) {
  return std::fabs(gain - intended) <= 1e-9 * std::max(1.0, std::fabs(intended));
}

}  // namespace

VerifyReport verify_reduction(const ReductionInstance& red, const BundleLattice& lat,
                              const SecondPriceTable& prices,
                              const VerifyOptions& options) {
  if (lat.spec() != red.instance.spec())
    throw std::invalid_argument("lattice does not match reduction instance");
  const AttributeSpec& spec = lat.spec();
  std::int64_t nb = lat.num_bundles();

  // intended[b] for helpful bundles; every other bundle must gain zero.
  std::vector<std::pair<std::int64_t, double>> intended;
  for (const HelpfulBundle& h : red.helpful)
    intended.emplace_back(bundle_index(spec, h.bundle), h.intended_gain);
  std::sort(intended.begin(), intended.end());

  VerifyReport report;
  auto intended_of = [&](std::int64_t b) {
    auto it = std::lower_bound(intended.begin(), intended.end(),
                               std::make_pair(b, -1.0));
    return it != intended.end() && it->first == b ? it->second : 0.0;
  };
  auto check = [&](std::int64_t b) {
    double want = intended_of(b);
    if (!gain_matches(prices.gain(b), want))
      report_violation(report, spec, b, prices.gain(b), want);
  };

  for (const auto& [idx, gain] : intended) {
    (void)gain;
    check(idx);
    ++report.helpful_checked;
  }

  if (options.full_sweep) {
    for (std::int64_t b = 0; b < nb; ++b) check(b);
    report.sampled_checked = nb;
    report.ok = report.violations == 0;
    return report;
  }

  // All bundles that intersect some helpful bundle: per attribute the digit
  // either matches the helpful value or is hidden (anything goes under a
  // hidden attribute of the helpful bundle).
  std::vector<bool> visited(nb, false);
  for (const auto& [idx, gain] : intended) {
    (void)gain;
    visited[idx] = true;
  }
  for (const HelpfulBundle& h : red.helpful) {
    std::vector<std::vector<int>> options_per_attr(spec.k());
    for (int i = 0; i < spec.k(); ++i) {
      int v = h.bundle.pattern[i];
      if (v == kHidden) {
        for (int digit = 0; digit <= spec.cardinality(i); ++digit)
          options_per_attr[i].push_back(digit);
      } else {
        options_per_attr[i] = {v, spec.cardinality(i)};
      }
    }
    std::vector<int> choice(spec.k(), 0);
    for (;;) {
      std::int64_t b = 0;
      for (int i = 0; i < spec.k(); ++i)
        b = b * (spec.cardinality(i) + 1) + options_per_attr[i][choice[i]];
      if (!visited[b]) {
        visited[b] = true;
        check(b);
        ++report.intersecting_checked;
      }
      int pos = spec.k() - 1;
      while (pos >= 0) {
        if (++choice[pos] < static_cast<int>(options_per_attr[pos].size())) break;
        choice[pos--] = 0;
      }
      if (pos < 0) break;
    }
  }

  // Seeded sample of the remaining bundles.
  std::int64_t want = std::min<std::int64_t>(options.sample_count, nb);
  Philox4x32 rng(options.sample_seed);
  std::int64_t attempts = 0;
  while (report.sampled_checked < want && attempts < want * 20) {
    ++attempts;
    std::int64_t b = static_cast<std::int64_t>(rng.next_u64() % nb);
    if (visited[b]) continue;
    visited[b] = true;
    check(b);
    ++report.sampled_checked;
  }

  report.ok = report.violations == 0;
  return report;
}

VerifyReport verify_reduction(const ReductionInstance& red,
                              const VerifyOptions& options) {
  BundleLattice lat(red.instance.spec());
  SecondPriceTable prices = second_price_table(lat, red.instance);
  return verify_reduction(red, lat, prices, options);
}

ProblemInstance gap_instance(int k) {
  if (k < 2) throw std::invalid_argument("gap instance needs k >= 2");
  if (k > 20) throw std::invalid_argument("gap instance limited to k <= 20");
  AttributeSpec spec(std::vector<int>(k, 2));
  std::int64_t m = spec.num_instantiations();
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, 0.0));
  rows[0][0] = static_cast<double>(m) / 2.0;
  rows[m - 1][m - 1] = static_cast<double>(m) / 2.0;
  for (std::int64_t i = 1; i + 1 < m; ++i) rows[i][i] = 1.0;
  return ProblemInstance(std::move(spec), std::move(rows));
}

HidingScheme cycle_scheme(int k) {
  if (k < 3) throw std::invalid_argument("cycle scheme needs k >= 3");
  HidingScheme s;
  for (int i = 0; i < k; ++i) {
    NaturalBundle b;
    b.pattern.assign(k, 0);
    b.pattern[i] = kHidden;
    b.pattern[(i + 1) % k] = 1;
    s.bundles.push_back(std::move(b));
  }
  return s;
}

}  // namespace ahs
