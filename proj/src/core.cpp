#include "ahs/core.hpp"

#include <stdexcept>
#include <unordered_set>

#include "ahs/par.hpp"

namespace ahs {

namespace {

// Keeps every per-bundle table comfortably in memory.
constexpr std::int64_t kMaxBundles = std::int64_t{1} << 28;

void check_attr(const AttributeSpec& spec, int attr) {
  if (attr < 0 || attr >= spec.k())
    throw std::invalid_argument("attribute index out of range");
}

void check_pattern(const AttributeSpec& spec, const NaturalBundle& b) {
  if (static_cast<int>(b.pattern.size()) != spec.k())
    throw std::invalid_argument("bundle dimension mismatch");
  for (int i = 0; i < spec.k(); ++i) {
    int v = b.pattern[i];
    if (v != kHidden && (v < 0 || v >= spec.cardinality(i)))
      throw std::invalid_argument("bundle pattern value out of range");
  }
}

void check_coords(const AttributeSpec& spec, const Instantiation& inst) {
  if (static_cast<int>(inst.coords.size()) != spec.k())
    throw std::invalid_argument("instantiation dimension mismatch");
  for (int i = 0; i < spec.k(); ++i) {
    int v = inst.coords[i];
    if (v < 0 || v >= spec.cardinality(i))
      throw std::invalid_argument("instantiation coordinate out of range");
  }
}

}  // namespace

AttributeSpec::AttributeSpec(std::vector<int> cardinalities)
    : cards_(std::move(cardinalities)) {
  if (cards_.empty()) throw std::invalid_argument("need at least one attribute");
  m_ = 1;
  num_bundles_ = 1;
  for (int c : cards_) {
    if (c < 2) throw std::invalid_argument("attribute cardinality must be >= 2");
    m_ *= c;
    num_bundles_ *= c + 1;
    if (num_bundles_ > kMaxBundles)
      throw std::invalid_argument("attribute space too large");
  }
}

bool AttributeSpec::all_binary() const {
  return std::all_of(cards_.begin(), cards_.end(), [](int c) { return c == 2; });
}

std::int64_t instantiation_index(const AttributeSpec& spec, const Instantiation& inst) {
  check_coords(spec, inst);
  std::int64_t idx = 0;
  for (int i = 0; i < spec.k(); ++i) idx = idx * spec.cardinality(i) + inst.coords[i];
  return idx;
}

Instantiation instantiation_from_index(const AttributeSpec& spec, std::int64_t index) {
  if (index < 0 || index >= spec.num_instantiations())
    throw std::invalid_argument("instantiation index out of range");
  Instantiation inst;
  inst.coords.assign(spec.k(), 0);
  for (int i = spec.k() - 1; i >= 0; --i) {
    inst.coords[i] = static_cast<int>(index % spec.cardinality(i));
    index /= spec.cardinality(i);
  }
  return inst;
}

std::int64_t bundle_index(const AttributeSpec& spec, const NaturalBundle& b) {
  check_pattern(spec, b);
  std::int64_t idx = 0;
  for (int i = 0; i < spec.k(); ++i) {
    int digit = b.pattern[i] == kHidden ? spec.cardinality(i) : b.pattern[i];
    idx = idx * (spec.cardinality(i) + 1) + digit;
  }
  return idx;
}

NaturalBundle bundle_from_index(const AttributeSpec& spec, std::int64_t index) {
  if (index < 0 || index >= spec.num_bundles())
    throw std::invalid_argument("bundle index out of range");
  NaturalBundle b;
  b.pattern.assign(spec.k(), 0);
  for (int i = spec.k() - 1; i >= 0; --i) {
    int digit = static_cast<int>(index % (spec.cardinality(i) + 1));
    index /= spec.cardinality(i) + 1;
    b.pattern[i] = digit == spec.cardinality(i) ? kHidden : digit;
  }
  return b;
}

int hidden_count(const NaturalBundle& b) {
  return static_cast<int>(std::count(b.pattern.begin(), b.pattern.end(), kHidden));
}

std::int64_t bundle_size(const AttributeSpec& spec, const NaturalBundle& b) {
  check_pattern(spec, b);
  std::int64_t size = 1;
  for (int i = 0; i < spec.k(); ++i)
    if (b.pattern[i] == kHidden) size *= spec.cardinality(i);
  return size;
}

bool contains(const NaturalBundle& b, const Instantiation& inst) {
  if (b.pattern.size() != inst.coords.size())
    throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < b.pattern.size(); ++i)
    if (b.pattern[i] != kHidden && b.pattern[i] != inst.coords[i]) return false;
  return true;
}

bool intersects(const NaturalBundle& a, const NaturalBundle& b) {
  if (a.pattern.size() != b.pattern.size())
    throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < a.pattern.size(); ++i)
    if (a.pattern[i] != kHidden && b.pattern[i] != kHidden &&
        a.pattern[i] != b.pattern[i])
      return false;
  return true;
}

std::vector<NaturalBundle> enumerate_bundles(const AttributeSpec& spec) {
  std::vector<NaturalBundle> out;
  out.reserve(spec.num_bundles());
  for (std::int64_t b = 0; b < spec.num_bundles(); ++b)
    out.push_back(bundle_from_index(spec, b));
  return out;
}

std::vector<Instantiation> enumerate_instantiations(const AttributeSpec& spec,
                                                    const NaturalBundle& b) {
  check_pattern(spec, b);
  std::vector<int> hidden;
  for (int i = 0; i < spec.k(); ++i)
    if (b.pattern[i] == kHidden) hidden.push_back(i);

  std::vector<Instantiation> out;
  out.reserve(bundle_size(spec, b));
  Instantiation cur;
  cur.coords = b.pattern;
  for (int i : hidden) cur.coords[i] = 0;
  for (;;) {
    out.push_back(cur);
    int pos = static_cast<int>(hidden.size()) - 1;
    while (pos >= 0) {
      int attr = hidden[pos];
      if (++cur.coords[attr] < spec.cardinality(attr)) break;
      cur.coords[attr] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<NaturalBundle> split(const AttributeSpec& spec, const NaturalBundle& b,
                                 int attr) {
  check_pattern(spec, b);
  check_attr(spec, attr);
  if (b.pattern[attr] != kHidden)
    throw std::invalid_argument("split attribute is not hidden");
  std::vector<NaturalBundle> out;
  out.reserve(spec.cardinality(attr));
  for (int v = 0; v < spec.cardinality(attr); ++v) {
    NaturalBundle child = b;
    child.pattern[attr] = v;
    out.push_back(std::move(child));
  }
  return out;
}

ProblemInstance::ProblemInstance(AttributeSpec spec,
                                 std::vector<std::vector<double>> valuations)
    : spec_(std::move(spec)), n_(static_cast<int>(valuations.size())) {
  if (n_ < 2) throw std::invalid_argument("need at least two bidders");
  values_.reserve(static_cast<std::size_t>(n_) * spec_.num_instantiations());
  for (const auto& row : valuations) {
    if (static_cast<std::int64_t>(row.size()) != spec_.num_instantiations())
      throw std::invalid_argument("valuation row length != number of instantiations");
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("valuations must be finite and nonnegative");
      values_.push_back(v);
    }
  }
}

std::optional<SchemeViolation> validate_scheme(const AttributeSpec& spec,
                                               const HidingScheme& s) {
  for (std::size_t i = 0; i < s.bundles.size(); ++i) {
    try {
      check_pattern(spec, s.bundles[i]);
    } catch (const std::invalid_argument& e) {
      return SchemeViolation{i, i, e.what()};
    }
  }
  for (std::size_t i = 0; i < s.bundles.size(); ++i)
    for (std::size_t j = i + 1; j < s.bundles.size(); ++j)
      if (intersects(s.bundles[i], s.bundles[j]))
        return SchemeViolation{i, j, "bundles intersect"};
  return std::nullopt;
}

void canonicalize(const AttributeSpec& spec, HidingScheme& s) {
  std::sort(s.bundles.begin(), s.bundles.end(),
            [&](const NaturalBundle& a, const NaturalBundle& b) {
              return bundle_index(spec, a) < bundle_index(spec, b);
            });
}

double bundle_value(const ProblemInstance& inst, int bidder, const NaturalBundle& b) {
  if (bidder < 0 || bidder >= inst.num_bidders())
    throw std::invalid_argument("bidder index out of range");
  check_pattern(inst.spec(), b);
  double sum = 0.0;
  for (const Instantiation& w : enumerate_instantiations(inst.spec(), b))
    sum += inst.valuation(bidder, instantiation_index(inst.spec(), w));
  return sum;
}

double second_price(const ProblemInstance& inst, const NaturalBundle& b) {
  check_pattern(inst.spec(), b);
  double top1 = -1.0, top2 = -1.0;
  std::vector<std::int64_t> indices;
  for (const Instantiation& w : enumerate_instantiations(inst.spec(), b))
    indices.push_back(instantiation_index(inst.spec(), w));
  for (int i = 0; i < inst.num_bidders(); ++i) {
    double v = 0.0;
    for (std::int64_t w : indices) v += inst.valuation(i, w);
    if (v > top1) {
      top2 = top1;
      top1 = v;
    } else if (v > top2) {
      top2 = v;
    }
  }
  return top2;
}

double bundle_gain(const ProblemInstance& inst, const NaturalBundle& b) {
  double unit_sum = 0.0;
  for (const Instantiation& w : enumerate_instantiations(inst.spec(), b)) {
    NaturalBundle unit;
    unit.pattern = w.coords;
    unit_sum += second_price(inst, unit);
  }
  return second_price(inst, b) - unit_sum;
}

double baseline_revenue(const ProblemInstance& inst) {
  double sum = 0.0;
  for (std::int64_t w = 0; w < inst.spec().num_instantiations(); ++w) {
    double top1 = -1.0, top2 = -1.0;
    for (int i = 0; i < inst.num_bidders(); ++i) {
      double v = inst.valuation(i, w);
      if (v > top1) {
        top2 = top1;
        top1 = v;
      } else if (v > top2) {
        top2 = v;
      }
    }
    sum += top2;
  }
  return sum;
}

namespace {

void require_valid(const AttributeSpec& spec, const HidingScheme& s) {
  if (auto v = validate_scheme(spec, s))
    throw std::invalid_argument("invalid hiding scheme: " + v->reason);
}

}  // namespace

double scheme_gain(const ProblemInstance& inst, const HidingScheme& s) {
  require_valid(inst.spec(), s);
  double sum = 0.0;
  for (const NaturalBundle& b : s.bundles) sum += bundle_gain(inst, b);
  return sum;
}

double scheme_revenue(const ProblemInstance& inst, const HidingScheme& s) {
  return baseline_revenue(inst) + scheme_gain(inst, s);
}

double scheme_revenue_direct(const ProblemInstance& inst, const HidingScheme& s) {
  require_valid(inst.spec(), s);
  std::unordered_set<std::int64_t> covered;
  double sum = 0.0;
  for (const NaturalBundle& b : s.bundles) {
    sum += second_price(inst, b);
    for (const Instantiation& w : enumerate_instantiations(inst.spec(), b))
      covered.insert(instantiation_index(inst.spec(), w));
  }
  for (std::int64_t w = 0; w < inst.spec().num_instantiations(); ++w) {
    if (covered.count(w)) continue;
    NaturalBundle unit;
    unit.pattern = instantiation_from_index(inst.spec(), w).coords;
    sum += second_price(inst, unit);
  }
  return sum;
}

BundleLattice::BundleLattice(AttributeSpec spec) : spec_(std::move(spec)) {
  int k = spec_.k();
  bundle_strides_.assign(k, 1);
  inst_strides_.assign(k, 1);
  for (int i = k - 2; i >= 0; --i) {
    bundle_strides_[i] = bundle_strides_[i + 1] * (spec_.cardinality(i + 1) + 1);
    inst_strides_[i] = inst_strides_[i + 1] * spec_.cardinality(i + 1);
  }

  std::int64_t nb = spec_.num_bundles();
  hidden_count_.assign(nb, 0);
  first_hidden_.assign(nb, -1);
  layers_.assign(k + 1, {});

  std::vector<int> digits(k, 0);
  for (std::int64_t b = 0; b < nb; ++b) {
    int hc = 0;
    int first = -1;
    for (int i = 0; i < k; ++i) {
      if (digits[i] == spec_.cardinality(i)) {
        ++hc;
        if (first < 0) first = i;
      }
    }
    hidden_count_[b] = static_cast<std::uint8_t>(hc);
    first_hidden_[b] = static_cast<std::int8_t>(first);
    layers_[hc].push_back(b);

    int pos = k - 1;
    while (pos >= 0 && digits[pos] == spec_.cardinality(pos)) digits[pos--] = 0;
    if (pos >= 0) ++digits[pos];
  }
}

void BundleLattice::decode(std::int64_t b, std::vector<int>& digits) const {
  digits.resize(spec_.k());
  for (int i = spec_.k() - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(b % (spec_.cardinality(i) + 1));
    b /= spec_.cardinality(i) + 1;
  }
}

std::int64_t BundleLattice::index_of_digits(const std::vector<int>& digits) const {
  std::int64_t idx = 0;
  for (int i = 0; i < spec_.k(); ++i)
    idx = idx * (spec_.cardinality(i) + 1) + digits[i];
  return idx;
}

std::int64_t BundleLattice::unit_instantiation(const std::vector<int>& digits) const {
  std::int64_t idx = 0;
  for (int i = 0; i < spec_.k(); ++i) idx = idx * spec_.cardinality(i) + digits[i];
  return idx;
}

namespace {

void check_lattice(const BundleLattice& lat, const ProblemInstance& inst) {
  if (lat.spec() != inst.spec())
    throw std::invalid_argument("lattice and instance attribute specs differ");
}

// Value of a unit bundle in digit form is the bidder's valuation of its
// single instantiation; every other bundle sums its children along the first
// hidden attribute.
double unit_value(const BundleLattice& lat, const double* row,
                  const std::vector<int>& digits) {
  return row[lat.unit_instantiation(digits)];
}

}  // namespace

std::vector<double> bidder_bundle_values_serial(const BundleLattice& lat,
                                                const ProblemInstance& inst,
                                                int bidder) {
  check_lattice(lat, inst);
  if (bidder < 0 || bidder >= inst.num_bidders())
    throw std::invalid_argument("bidder index out of range");
  const AttributeSpec& spec = lat.spec();
  const double* row = inst.row(bidder);
  std::int64_t nb = lat.num_bundles();
  std::vector<double> value(nb);

  std::vector<int> digits(spec.k(), 0);
  for (std::int64_t b = 0; b < nb; ++b) {
    int attr = lat.first_hidden_attr(b);
    if (attr < 0) {
      value[b] = unit_value(lat, row, digits);
    } else {
      std::int64_t stride = lat.bundle_stride(attr);
      double sum = 0.0;
      for (int v = spec.cardinality(attr); v >= 1; --v) sum += value[b - v * stride];
      value[b] = sum;
    }
    int pos = spec.k() - 1;
    while (pos >= 0 && digits[pos] == spec.cardinality(pos)) digits[pos--] = 0;
    if (pos >= 0) ++digits[pos];
  }
  return value;
}

std::vector<double> bidder_bundle_values(const BundleLattice& lat,
                                         const ProblemInstance& inst, int bidder) {
  check_lattice(lat, inst);
  if (bidder < 0 || bidder >= inst.num_bidders())
    throw std::invalid_argument("bidder index out of range");
  const AttributeSpec& spec = lat.spec();
  const double* row = inst.row(bidder);
  std::vector<double> value(lat.num_bundles());

  // Layer h depends only on layer h-1, so each layer is a parallel loop with
  // a barrier between layers. Per-entry arithmetic matches the serial sweep,
  // so the tables agree bitwise.
  std::vector<int> digits;
  for (int h = 0; h <= spec.k(); ++h) {
    const auto& layer = lat.layers()[h];
    std::int64_t count = static_cast<std::int64_t>(layer.size());
#pragma omp parallel for schedule(static) private(digits)
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::int64_t b = layer[idx];
      int attr = lat.first_hidden_attr(b);
      if (attr < 0) {
        lat.decode(b, digits);
        value[b] = unit_value(lat, row, digits);
      } else {
        std::int64_t stride = lat.bundle_stride(attr);
        double sum = 0.0;
        for (int v = spec.cardinality(attr); v >= 1; --v) sum += value[b - v * stride];
        value[b] = sum;
      }
    }
  }
  return value;
}

namespace {

// Streaming top-two merge; ties at the maximum leave top1 == top2.
inline void merge_top2(double v, double& top1, double& top2) {
  if (v > top1) {
    top2 = top1;
    top1 = v;
  } else if (v > top2) {
    top2 = v;
  }
}

// unit_sum over a table whose unit entries are already the unit second
// prices: every other bundle sums its children along the first hidden
// attribute.
void accumulate_unit_sums(const BundleLattice& lat, std::vector<double>& table,
                          bool parallel) {
  const AttributeSpec& spec = lat.spec();
  if (!parallel) {
    for (std::int64_t b = 0; b < lat.num_bundles(); ++b) {
      int attr = lat.first_hidden_attr(b);
      if (attr < 0) continue;
      std::int64_t stride = lat.bundle_stride(attr);
      double sum = 0.0;
      for (int v = spec.cardinality(attr); v >= 1; --v) sum += table[b - v * stride];
      table[b] = sum;
    }
    return;
  }
  for (int h = 1; h <= spec.k(); ++h) {
    const auto& layer = lat.layers()[h];
    std::int64_t count = static_cast<std::int64_t>(layer.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::int64_t b = layer[idx];
      int attr = lat.first_hidden_attr(b);
      std::int64_t stride = lat.bundle_stride(attr);
      double sum = 0.0;
      for (int v = spec.cardinality(attr); v >= 1; --v) sum += table[b - v * stride];
      table[b] = sum;
    }
  }
}

SecondPriceTable second_price_table_impl(const BundleLattice& lat,
                                         const ProblemInstance& inst,
                                         bool parallel) {
  check_lattice(lat, inst);
  std::int64_t nb = lat.num_bundles();
  SecondPriceTable out;
  // Valuations are nonnegative and n >= 2, so zero-initialized running
  // maxima merge correctly.
  out.second.assign(nb, 0.0);
  std::vector<double> top1(nb, 0.0);
  for (int bidder = 0; bidder < inst.num_bidders(); ++bidder) {
    std::vector<double> value = parallel
                                    ? bidder_bundle_values(lat, inst, bidder)
                                    : bidder_bundle_values_serial(lat, inst, bidder);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t b = 0; b < nb; ++b)
      merge_top2(value[b], top1[b], out.second[b]);
  }

  // Unit entries of `second` are exactly the unit second prices; sum them up
  // the lattice to get unit_sum.
  out.unit_sum = out.second;
  accumulate_unit_sums(lat, out.unit_sum, parallel);
  return out;
}

}  // namespace

SecondPriceTable second_price_table(const BundleLattice& lat,
                                    const ProblemInstance& inst) {
  return second_price_table_impl(lat, inst, true);
}

SecondPriceTable second_price_table_serial(const BundleLattice& lat,
                                           const ProblemInstance& inst) {
  return second_price_table_impl(lat, inst, false);
}

}  // namespace ahs
