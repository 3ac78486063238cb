#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ahs {

// Pattern entry marking a hidden attribute.
inline constexpr int kHidden = -1;

// Relative tolerance for comparing revenues computed through different
// floating-point routes.
inline constexpr double kRelTol = 1e-9;

inline bool nearly_equal(double a, double b, double rel = kRelTol) {
  if (a == b) return true;
  double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= rel * scale;
}

// Attribute space: k attributes, attribute i taking values 0..C_i-1 with
// C_i >= 2. An item instantiation fixes every attribute; a natural bundle
// fixes a subset and hides the rest.
class AttributeSpec {
 public:
  explicit AttributeSpec(std::vector<int> cardinalities);

  int k() const { return static_cast<int>(cards_.size()); }
  const std::vector<int>& cardinalities() const { return cards_; }
  int cardinality(int attr) const { return cards_[attr]; }
  std::int64_t num_instantiations() const { return m_; }
  std::int64_t num_bundles() const { return num_bundles_; }
  bool all_binary() const;

  bool operator==(const AttributeSpec& o) const { return cards_ == o.cards_; }
  bool operator!=(const AttributeSpec& o) const { return !(*this == o); }

 private:
  std::vector<int> cards_;
  std::int64_t m_ = 0;
  std::int64_t num_bundles_ = 0;
};

struct Instantiation {
  std::vector<int> coords;
  bool operator==(const Instantiation& o) const { return coords == o.coords; }
};

// Pattern with kHidden at hidden positions.
struct NaturalBundle {
  std::vector<int> pattern;
  bool operator==(const NaturalBundle& o) const { return pattern == o.pattern; }
};

// Mixed-radix index of an instantiation, most significant attribute first.
std::int64_t instantiation_index(const AttributeSpec& spec, const Instantiation& inst);
Instantiation instantiation_from_index(const AttributeSpec& spec, std::int64_t index);

// Canonical bundle index: mixed radix over digits 0..C_i, where digit C_i
// means hidden. Index order is the canonical enumeration order
// (lexicographic, hidden sorting after every concrete value).
std::int64_t bundle_index(const AttributeSpec& spec, const NaturalBundle& b);
NaturalBundle bundle_from_index(const AttributeSpec& spec, std::int64_t index);

int hidden_count(const NaturalBundle& b);
std::int64_t bundle_size(const AttributeSpec& spec, const NaturalBundle& b);

bool contains(const NaturalBundle& b, const Instantiation& inst);
bool intersects(const NaturalBundle& a, const NaturalBundle& b);

std::vector<NaturalBundle> enumerate_bundles(const AttributeSpec& spec);
std::vector<Instantiation> enumerate_instantiations(const AttributeSpec& spec,
                                                    const NaturalBundle& b);

// The C_x children of b obtained by revealing hidden attribute x.
std::vector<NaturalBundle> split(const AttributeSpec& spec, const NaturalBundle& b,
                                 int attr);

// Bidders' additive valuations over instantiations. Rows are bidders; row
// entries follow instantiation index order. Requires n >= 2 bidders and
// nonnegative finite values.
class ProblemInstance {
 public:
  ProblemInstance(AttributeSpec spec, std::vector<std::vector<double>> valuations);

  const AttributeSpec& spec() const { return spec_; }
  int num_bidders() const { return n_; }
  double valuation(int bidder, std::int64_t omega) const {
    return values_[static_cast<std::size_t>(bidder) * spec_.num_instantiations() + omega];
  }
  const double* row(int bidder) const {
    return values_.data() + static_cast<std::size_t>(bidder) * spec_.num_instantiations();
  }

 private:
  AttributeSpec spec_;
  int n_;
  std::vector<double> values_;
};

// A set of pairwise-disjoint natural bundles offered for sale; instantiations
// not covered are sold separately.
struct HidingScheme {
  std::vector<NaturalBundle> bundles;
};

struct SchemeViolation {
  std::size_t first = 0;   // offending bundle position(s) in the scheme
  std::size_t second = 0;
  std::string reason;
};

// nullopt when valid; otherwise the first offending bundle or pair.
std::optional<SchemeViolation> validate_scheme(const AttributeSpec& spec,
                                               const HidingScheme& s);

// Sort bundles into canonical index order.
void canonicalize(const AttributeSpec& spec, HidingScheme& s);

double bundle_value(const ProblemInstance& inst, int bidder, const NaturalBundle& b);
double second_price(const ProblemInstance& inst, const NaturalBundle& b);
// r(b): second price of the bundle minus the sum of its members' unit
// second prices.
double bundle_gain(const ProblemInstance& inst, const NaturalBundle& b);
double baseline_revenue(const ProblemInstance& inst);
double scheme_gain(const ProblemInstance& inst, const HidingScheme& s);
// baseline + scheme gain; must agree with scheme_revenue_direct.
double scheme_revenue(const ProblemInstance& inst, const HidingScheme& s);
// Direct form: bundle second prices plus second prices of uncovered units.
double scheme_revenue_direct(const ProblemInstance& inst, const HidingScheme& s);

// Index machinery shared by the bulk kernels: digit strides, per-bundle
// hidden counts, the position of each bundle's first hidden attribute, and
// bundles grouped by hidden count. Immutable after construction and safe to
// share across threads.
class BundleLattice {
 public:
  explicit BundleLattice(AttributeSpec spec);

  const AttributeSpec& spec() const { return spec_; }
  std::int64_t num_bundles() const { return spec_.num_bundles(); }
  std::int64_t root() const { return spec_.num_bundles() - 1; }  // all hidden

  std::int64_t bundle_stride(int attr) const { return bundle_strides_[attr]; }
  std::int64_t inst_stride(int attr) const { return inst_strides_[attr]; }
  int hidden_count(std::int64_t b) const { return hidden_count_[b]; }
  // -1 for unit bundles.
  int first_hidden_attr(std::int64_t b) const { return first_hidden_[b]; }
  const std::vector<std::vector<std::int64_t>>& layers() const { return layers_; }

  // Digits of a bundle index; digit C_i means hidden.
  void decode(std::int64_t b, std::vector<int>& digits) const;
  std::int64_t index_of_digits(const std::vector<int>& digits) const;
  // Instantiation index of a unit bundle given by digits.
  std::int64_t unit_instantiation(const std::vector<int>& digits) const;

 private:
  AttributeSpec spec_;
  std::vector<std::int64_t> bundle_strides_;
  std::vector<std::int64_t> inst_strides_;
  std::vector<std::uint8_t> hidden_count_;
  std::vector<std::int8_t> first_hidden_;
  std::vector<std::vector<std::int64_t>> layers_;
};

// Per-bundle value table for one bidder, computed bottom-up over the lattice:
// a bundle's value is the sum of its children's values along the first hidden
// attribute. The parallel kernel walks hidden-count layers; the serial
// reference is a single index-order sweep. Both produce identical bits.
std::vector<double> bidder_bundle_values(const BundleLattice& lat,
                                         const ProblemInstance& inst, int bidder);
std::vector<double> bidder_bundle_values_serial(const BundleLattice& lat,
                                                const ProblemInstance& inst,
                                                int bidder);

// second[b] = second-highest bidder value of bundle b; unit_sum[b] = sum of
// unit second prices over b's instantiations.
struct SecondPriceTable {
  std::vector<double> second;
  std::vector<double> unit_sum;

  double gain(std::int64_t b) const { return second[b] - unit_sum[b]; }
  double baseline() const { return unit_sum.back(); }
};

SecondPriceTable second_price_table(const BundleLattice& lat,
                                    const ProblemInstance& inst);
SecondPriceTable second_price_table_serial(const BundleLattice& lat,
                                           const ProblemInstance& inst);

}  // namespace ahs
