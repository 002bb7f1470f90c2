#include <algorithm>
#include <vector>

#include "doctest.h"
#include "fractmap/htb.hpp"
#include "fractmap/rng.hpp"
#include "jenks_exhaustive.hpp"

using namespace fractmap;
using htb::JenksResult;
using htb::ValueSeries;

namespace {

std::vector<std::size_t> class_sizes(const JenksResult& r) {
  std::vector<std::size_t> sizes(r.breaks.size(), 0);
  for (int cls : r.assignments) ++sizes[static_cast<std::size_t>(cls - 1)];
  return sizes;
}

// Two-pass total within-class sum of squared deviations, independent of
// the prefix-sum formulation used by the implementation.
double total_ssd(const ValueSeries& values, const std::vector<int>& assignments,
                 std::size_t k) {
  double total = 0.0;
  for (std::size_t cls = 1; cls <= k; ++cls) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (static_cast<std::size_t>(assignments[i]) == cls) {
        sum += values[i];
        ++count;
      }
    }
    if (count == 0) continue;
    double mean = sum / static_cast<double>(count);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (static_cast<std::size_t>(assignments[i]) == cls) {
        total += (values[i] - mean) * (values[i] - mean);
      }
    }
  }
  return total;
}

}  // namespace

TEST_CASE("two obvious clusters split between them") {
  JenksResult r = htb::jenks_breaks({1, 2, 3, 10, 11, 12}, 2);
  CHECK(r.breaks == std::vector<double>{3, 12});
  CHECK(r.assignments == std::vector<int>{1, 1, 1, 2, 2, 2});
}

TEST_CASE("assignment follows input order, not sorted order") {
  JenksResult r = htb::jenks_breaks({10, 1, 11, 2, 12, 3}, 2);
  CHECK(r.assignments == std::vector<int>{2, 1, 2, 1, 2, 1});
}

TEST_CASE("k equal to one puts everything in a single class") {
  JenksResult r = htb::jenks_breaks({5, 1, 9}, 1);
  CHECK(r.breaks == std::vector<double>{9});
  CHECK(r.assignments == std::vector<int>{1, 1, 1});
}

TEST_CASE("class count beyond the distinct values is rejected") {
  CHECK_THROWS_AS(htb::jenks_breaks({1, 1, 1}, 2), TooManyClasses);
  CHECK_THROWS_AS(htb::jenks_breaks({1, 2}, 3), TooManyClasses);
  CHECK_THROWS_AS(htb::jenks_breaks({1, 2}, 0), NonPositiveValue);
  CHECK_NOTHROW(htb::jenks_breaks({1, 1, 2, 2}, 2));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(htb::jenks_breaks({}, 1), EmptySeries);
  CHECK_THROWS_AS(htb::jenks_breaks({1, -2}, 1), NonPositiveValue);
}

TEST_CASE("cost ties resolve toward the smallest lowest break") {
  // {10} | {20, 30} and {10, 20} | {30} have equal cost 50; the first wins.
  JenksResult r = htb::jenks_breaks({10, 20, 30}, 2);
  CHECK(r.breaks == std::vector<double>{10, 30});
  CHECK(r.assignments == std::vector<int>{1, 2, 2});
}

// Class sizes and cost below were frozen from an independent
// dynamic-program-free enumeration; the top class of the optimal 4-way
// partition of 1, 1/2, ..., 1/1023 is the singleton {1}.
TEST_CASE("four-way partition of the 1023-term Zipf series") {
  ValueSeries series = htb::zipf_series(1023);
  JenksResult r = htb::jenks_breaks(series, 4);
  CHECK(class_sizes(r) == std::vector<std::size_t>{1004, 15, 3, 1});
  CHECK(r.breaks.back() == 1.0);
  CHECK(r.breaks[2] == 0.5);
  double cost = total_ssd(series, r.assignments, 4);
  CHECK(cost == doctest::Approx(0.09416485015413505).epsilon(1e-12));
}

TEST_CASE("dynamic program equals exhaustive enumeration") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.next() % 11);  // 2..12
    int max_k = n < 4 ? n : 4;
    int k = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_k));
    ValueSeries values;
    for (int i = 0; i < n; ++i) {
      // Mix continuous values with interleaved duplicates to exercise ties.
      if (rng.next_bool() && !values.empty()) {
        values.push_back(values[rng.next() % values.size()]);
      } else {
        values.push_back(1.0 + rng.next_unit() * 99.0);
      }
    }
    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (static_cast<int>(distinct.size()) < k) {
      CHECK_THROWS_AS(htb::jenks_breaks(values, k), TooManyClasses);
      continue;
    }
    JenksResult dp = htb::jenks_breaks(values, k);
    testsupport::ExhaustiveJenks brute = testsupport::exhaustive_jenks(values, k);
    CHECK(dp.breaks == brute.breaks);
    CHECK(class_sizes(dp) == brute.class_sizes);
    CHECK(total_ssd(values, dp.assignments, static_cast<std::size_t>(k)) ==
          doctest::Approx(brute.cost).epsilon(1e-9));
  }
}

TEST_CASE("classes partition the sorted order contiguously") {
  SplitMix64 rng(123);
  ValueSeries values;
  for (int i = 0; i < 40; ++i) values.push_back(rng.next_unit() * 10.0 + 0.1);
  JenksResult r = htb::jenks_breaks(values, 4);
  REQUIRE(r.breaks.size() == 4);
  CHECK(std::is_sorted(r.breaks.begin(), r.breaks.end()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    int cls = r.assignments[i];
    // Every value is at or below its class's break and above the previous.
    CHECK(values[i] <= r.breaks[static_cast<std::size_t>(cls - 1)]);
    if (cls > 1) {
      CHECK(values[i] > r.breaks[static_cast<std::size_t>(cls - 2)]);
    }
  }
}
