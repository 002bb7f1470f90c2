#include "fractmap/htb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fractmap::htb {

namespace {

// Neumaier-compensated summation: the split means are part of the public
// output, so they should not drift with accumulation order or subset size.
double mean_of(std::span<const double> values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + compensation) / static_cast<double>(values.size());
}

}  // namespace

void validate_series(const ValueSeries& series) {
  if (series.empty()) throw EmptySeries("value series is empty");
  for (std::size_t i = 0; i < series.size(); ++i) {
    double v = series[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw NonPositiveValue("value at index " + std::to_string(i) +
                             " must be finite and positive");
    }
  }
}

HtbResult head_tail_breaks(const ValueSeries& series, const HtbParams& params) {
  validate_series(series);
  if (params.head_limit <= 0.0 || params.head_limit > 1.0) {
    throw NonPositiveValue("head_limit must be in (0, 1]");
  }
  if (params.max_levels < 0) throw NonPositiveValue("max_levels must be >= 0");
  if (params.min_split_size < 2) {
    throw NonPositiveValue("min_split_size must be >= 2");
  }

  HtbResult result;
  result.assignments.assign(series.size(), 1);

  // Indices of the set still being split; starts as the whole series.
  std::vector<std::size_t> current(series.size());
  std::iota(current.begin(), current.end(), 0);

  int committed = 0;
  while (true) {
    int n = static_cast<int>(current.size());
    if (n < params.min_split_size) break;
    if (params.max_levels != 0 && committed >= params.max_levels - 1) break;

    std::vector<double> values;
    values.reserve(current.size());
    for (std::size_t idx : current) values.push_back(series[idx]);
    double mean = mean_of(values);

    std::vector<std::size_t> head;
    for (std::size_t idx : current) {
      if (series[idx] > mean) head.push_back(idx);
    }
    int h = static_cast<int>(head.size());
    if (h == 0) break;
    if (static_cast<double>(h) / static_cast<double>(n) > params.head_limit) break;

    ++committed;
    result.level_stats.push_back(
        {committed, n, mean, h, n - h});
    for (std::size_t idx : head) result.assignments[idx] = committed + 1;
    current = std::move(head);
  }

  result.ht_index = committed + 1;
  return result;
}

int ht_index(const ValueSeries& series, const HtbParams& params) {
  return head_tail_breaks(series, params).ht_index;
}

RankSizeTable rank_size(const ValueSeries& series) {
  validate_series(series);
  std::vector<std::size_t> order(series.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return series[a] > series[b];
  });
  RankSizeTable table;
  table.rows.reserve(series.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    table.rows.push_back({static_cast<int>(i) + 1, series[order[i]]});
  }
  return table;
}

std::vector<RankSizeTable> nested_rank_size(const ValueSeries& series,
                                            const HtbParams& params) {
  HtbResult htb = head_tail_breaks(series, params);
  std::vector<RankSizeTable> tables;
  tables.reserve(static_cast<std::size_t>(htb.ht_index));
  // Level L's nested set is every value assigned to level >= L; for L = 1
  // that is the whole series, and each committed head is the next set.
  for (int level = 1; level <= htb.ht_index; ++level) {
    ValueSeries subset;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (htb.assignments[i] >= level) subset.push_back(series[i]);
    }
    tables.push_back(rank_size(subset));
  }
  return tables;
}

ValueSeries zipf_series(int n) {
  if (n < 1) throw EmptySeries("zipf series length must be >= 1");
  ValueSeries series;
  series.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) series.push_back(1.0 / static_cast<double>(k));
  return series;
}

}  // namespace fractmap::htb
