#pragma once

// Independent head/tail-breaks reference implemented over exact rational
// arithmetic. The production code computes in double precision; this
// oracle removes rounding from the picture so boundary-sensitive counts
// (values close to a mean) can be trusted.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace testsupport {

using Rational = boost::multiprecision::cpp_rational;

struct RationalSplit {
  std::size_t count = 0;
  Rational mean;
  std::size_t head = 0;
  std::size_t tail = 0;
};

struct RationalHtbResult {
  int ht_index = 1;
  std::vector<RationalSplit> splits;
  std::vector<int> assignments;  // 1-based level per input value
  // True when some value equalled a candidate mean exactly; double
  // arithmetic may then legitimately disagree with this oracle.
  bool boundary_tie = false;
};

inline RationalHtbResult rational_head_tail_breaks(
    const std::vector<Rational>& values, const Rational& head_limit,
    int max_levels = 0, std::size_t min_split_size = 2) {
  RationalHtbResult result;
  result.assignments.assign(values.size(), 1);
  std::vector<std::size_t> current(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) current[i] = i;
  int committed = 0;
  for (;;) {
    if (current.size() < min_split_size) break;
    if (max_levels > 0 && committed >= max_levels - 1) break;
    Rational sum = 0;
    for (std::size_t i : current) sum += values[i];
    Rational mean = sum / static_cast<int>(current.size());
    std::vector<std::size_t> head;
    for (std::size_t i : current) {
      if (values[i] == mean) result.boundary_tie = true;
      if (values[i] > mean) head.push_back(i);
    }
    if (head.empty()) break;
    Rational fraction =
        Rational(static_cast<int>(head.size()), static_cast<int>(current.size()));
    if (fraction > head_limit) break;
    ++committed;
    result.splits.push_back({current.size(), mean, head.size(),
                             current.size() - head.size()});
    for (std::size_t i : head) result.assignments[i] = committed + 1;
    current = head;
  }
  result.ht_index = committed + 1;
  return result;
}

inline std::vector<Rational> rational_zipf(int n) {
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) values.emplace_back(1, k);
  return values;
}

}  // namespace testsupport
