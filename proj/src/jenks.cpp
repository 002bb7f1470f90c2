#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "fractmap/htb.hpp"

namespace fractmap::htb {

namespace {

// Sum of squared deviations from the mean over sorted[i..e], O(1) via
// prefix sums of values and squares.
class SsdTable {
 public:
  explicit SsdTable(const std::vector<double>& sorted) {
    std::size_t n = sorted.size();
    sum_.assign(n + 1, 0.0);
    sum_sq_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      sum_[i + 1] = sum_[i] + sorted[i];
      sum_sq_[i + 1] = sum_sq_[i] + sorted[i] * sorted[i];
    }
  }

  double operator()(std::size_t i, std::size_t e) const {
    double cnt = static_cast<double>(e - i + 1);
    double s = sum_[e + 1] - sum_[i];
    double sq = sum_sq_[e + 1] - sum_sq_[i];
    double ssd = sq - s * s / cnt;
    return ssd > 0.0 ? ssd : 0.0;
  }

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

}  // namespace

JenksResult jenks_breaks(const ValueSeries& series, int k) {
  validate_series(series);
  if (k < 1) throw NonPositiveValue("class count must be >= 1");
  std::size_t n = series.size();
  std::set<double> distinct(series.begin(), series.end());
  if (static_cast<std::size_t>(k) > distinct.size()) {
    throw TooManyClasses("requested " + std::to_string(k) + " classes but only " +
                         std::to_string(distinct.size()) + " distinct values");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });
  std::vector<double> sorted;
  sorted.reserve(n);
  for (std::size_t idx : order) sorted.push_back(series[idx]);

  SsdTable ssd(sorted);
  std::size_t kk = static_cast<std::size_t>(k);

  // dp[j][i]: minimal cost of splitting sorted[i..n-1] into j classes,
  // accumulated right-nested: ssd(i,e) + dp[j-1][e+1]. choice[j][i] is the
  // smallest class end achieving it, which makes the reconstructed
  // partition lexicographically smallest among cost-minimal ones.
  std::vector<std::vector<double>> dp(kk + 1, std::vector<double>(n + 1, 0.0));
  std::vector<std::vector<std::size_t>> choice(kk + 1, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    dp[1][i] = ssd(i, n - 1);
    choice[1][i] = n - 1;
  }
  for (std::size_t j = 2; j <= kk; ++j) {
    // With j classes to fill, the first may end no later than n-j.
    for (std::size_t i = 0; i + j <= n; ++i) {
      double best = 0.0;
      std::size_t best_e = i;
      bool have = false;
      for (std::size_t e = i; e + j <= n; ++e) {
        double cost = ssd(i, e) + dp[j - 1][e + 1];
        if (!have || cost < best) {
          best = cost;
          best_e = e;
          have = true;
        }
      }
      dp[j][i] = best;
      choice[j][i] = best_e;
    }
  }

  JenksResult result;
  result.assignments.assign(n, 0);
  std::size_t start = 0;
  for (std::size_t j = kk; j >= 1; --j) {
    std::size_t end = choice[j][start];
    int cls = static_cast<int>(kk - j) + 1;
    for (std::size_t pos = start; pos <= end; ++pos) {
      result.assignments[order[pos]] = cls;
    }
    result.breaks.push_back(sorted[end]);
    start = end + 1;
    if (j == 1) break;
  }
  return result;
}

}  // namespace fractmap::htb
