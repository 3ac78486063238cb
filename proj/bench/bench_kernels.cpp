// Timing comparison between the layered OpenMP kernels and the serial
// index-order reference. Both must produce identical bits; the serial sweep
// can win on few cores because it skips the per-layer decode work.
#include <chrono>
#include <cstdio>
#include <cstring>

#include "ahs/core.hpp"
#include "ahs/gadgets.hpp"
#include "ahs/par.hpp"
#include "ahs/tree.hpp"

using namespace ahs;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

double checksum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void bench_case(const char* label, int k, int cardinality, int n) {
  ProblemInstance inst = random_instance(k, cardinality, n, 9000, 0);
  BundleLattice lat(inst.spec());

  auto start = clock_type::now();
  SecondPriceTable serial_prices = second_price_table_serial(lat, inst);
  double serial_price_time = seconds_since(start);

  start = clock_type::now();
  SecondPriceTable parallel_prices = second_price_table(lat, inst);
  double parallel_price_time = seconds_since(start);

  bool prices_equal =
      std::memcmp(serial_prices.second.data(), parallel_prices.second.data(),
                  serial_prices.second.size() * sizeof(double)) == 0 &&
      std::memcmp(serial_prices.unit_sum.data(), parallel_prices.unit_sum.data(),
                  serial_prices.unit_sum.size() * sizeof(double)) == 0;

  start = clock_type::now();
  TreeSolution serial_tree = tree_dp_serial(lat, serial_prices);
  double serial_tree_time = seconds_since(start);

  start = clock_type::now();
  TreeSolution parallel_tree = tree_dp(lat, parallel_prices);
  double parallel_tree_time = seconds_since(start);

  bool tree_equal = std::memcmp(serial_tree.t.data(), parallel_tree.t.data(),
                                serial_tree.t.size() * sizeof(double)) == 0;

  std::printf("%s: %lld bundles, %d bidders\n", label,
              static_cast<long long>(lat.num_bundles()), n);
  std::printf("  price table  serial %8.3fs  parallel %8.3fs  (x%.2f)  %s\n",
              serial_price_time, parallel_price_time,
              serial_price_time / parallel_price_time,
              prices_equal ? "bits equal" : "MISMATCH");
  std::printf("  tree dp      serial %8.3fs  parallel %8.3fs  (x%.2f)  %s\n",
              serial_tree_time, parallel_tree_time,
              serial_tree_time / parallel_tree_time,
              tree_equal ? "bits equal" : "MISMATCH");
  std::printf("  checksums: price %.6f, tree %.6f, gain %.6f\n",
              checksum(parallel_prices.second), checksum(parallel_tree.t),
              parallel_tree.optimal_gain);
  if (!prices_equal || !tree_equal) std::exit(1);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  bench_case("k=10 binary", 10, 2, 10);
  bench_case("k=8 ternary", 8, 3, 8);
  return 0;
}
