#pragma once

#include <span>
#include <vector>

#include "fractmap/errors.hpp"

namespace fractmap::htb {

// A series of strictly positive, finite values. Operations validate on
// entry and throw EmptySeries / NonPositiveValue.
using ValueSeries = std::vector<double>;

struct HtbParams {
  // A split is committed only while head_count / count <= head_limit.
  double head_limit = 0.4;
  // Upper bound on the number of levels; 0 means unlimited.
  int max_levels = 0;
  // Sets smaller than this are never split (guards singleton recursion).
  int min_split_size = 2;
};

// One committed split: the mean partitions `count_before_split` values
// into head (strictly greater than the mean) and tail.
struct HtbLevelStat {
  int split_index = 0;  // 1-based
  int count_before_split = 0;
  double mean = 0.0;
  int head_count = 0;
  int tail_count = 0;
};

// Level 1 holds the smallest values (the final tail); level ht_index the
// largest. ht_index == committed splits + 1.
struct HtbResult {
  std::vector<int> assignments;  // per input value, 1..ht_index
  std::vector<HtbLevelStat> level_stats;
  int ht_index = 1;
};

// Recursive mean-split classification of a heavy-tailed series. Each round
// splits the current set at its arithmetic mean; the split commits only if
// the head is non-empty, its fraction is within head_limit, the current
// set has at least min_split_size values, and max_levels permits another
// level; recursion continues on the head.
HtbResult head_tail_breaks(const ValueSeries& series, const HtbParams& params = {});

int ht_index(const ValueSeries& series, const HtbParams& params = {});

struct RankSizeRow {
  int rank = 0;  // 1 = largest
  double value = 0.0;
};

struct RankSizeTable {
  std::vector<RankSizeRow> rows;
};

// Values sorted descending with 1-based ranks; ties keep input order.
RankSizeTable rank_size(const ValueSeries& series);

// rank_size of the full series, then of each committed head in turn; the
// table count equals ht_index.
std::vector<RankSizeTable> nested_rank_size(const ValueSeries& series,
                                            const HtbParams& params = {});

// 1, 1/2, 1/3, ..., 1/n.
ValueSeries zipf_series(int n);

struct JenksResult {
  // Upper bound of each class, ascending (class k's largest member).
  std::vector<double> breaks;
  // Per input value, 1..k; class 1 holds the smallest values.
  std::vector<int> assignments;
};

// Jenks natural breaks: the partition of the sorted values into k
// contiguous classes minimizing total within-class sum of squared
// deviations from class means. Tie-break: the partition whose lowest
// break is smallest, then lexicographically. Throws TooManyClasses when
// k exceeds the distinct-value count.
JenksResult jenks_breaks(const ValueSeries& series, int k);

// Shared entry validation (EmptySeries / NonPositiveValue).
void validate_series(const ValueSeries& series);

}  // namespace fractmap::htb
