#include "fractmap/generalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fractmap::generalize {

namespace {

void require_scale(const MapScale& scale) {
  if (scale.denominator < 1) {
    throw NonPositiveValue("map scale denominator must be >= 1");
  }
}

// Number of construction levels spanned by the scale step source ->
// target, i.e. the m with (target/source) = (ratio_den/ratio_num)^m.
int levels_spanned(const fractal::HierarchicalFeature& h, MapScale source,
                   MapScale target) {
  require_scale(source);
  require_scale(target);
  if (h.iterations < 0 ||
      h.levels.size() != static_cast<std::size_t>(h.iterations) + 1) {
    throw InvalidGeometry("construction levels inconsistent with iteration count");
  }
  if (target.denominator < source.denominator) {
    throw InvalidOrder("target scale must not be larger than the source scale");
  }
  if (target.denominator % source.denominator != 0) {
    throw RatioMismatch("scale step is not an integer multiple of the source");
  }
  std::uint64_t q = target.denominator / source.denominator;
  std::uint64_t num = h.scaling_ratio.numerator;
  std::uint64_t den = h.scaling_ratio.denominator;
  if (num < 1 || den <= num) {
    throw NonPositiveValue("scaling ratio must lie strictly in (0, 1)");
  }
  int m = 0;
  while (q != 1) {
    if (q > std::numeric_limits<std::uint64_t>::max() / num) {
      throw Overflow("scale step too large");
    }
    if ((q * num) % den != 0) {
      throw RatioMismatch("scale step is not a power of the pattern's scaling ratio");
    }
    q = q * num / den;
    ++m;
  }
  if (m > h.iterations) {
    throw InsufficientDepth("construction has only " +
                            std::to_string(h.iterations) + " iterations, need " +
                            std::to_string(m));
  }
  return m;
}

}  // namespace

GeneralizationResult generalize_hierarchical(const fractal::HierarchicalFeature& h,
                                             MapScale source, MapScale target) {
  int m = levels_spanned(h, source, target);
  GeneralizationResult result;
  std::size_t keep = static_cast<std::size_t>(h.iterations - m);
  result.retained =
      scale_by_ratio(h.levels[keep], source.denominator, target.denominator);
  result.levels_dropped = m;
  result.dropped_count = h.base().size() - result.retained.size();
  return result;
}

fractal::HierarchicalFeature generalize_hierarchical_pattern(
    const fractal::HierarchicalFeature& h, MapScale source, MapScale target) {
  int m = levels_spanned(h, source, target);
  fractal::HierarchicalFeature out;
  out.scaling_ratio = h.scaling_ratio;
  out.iterations = h.iterations - m;
  out.levels.reserve(static_cast<std::size_t>(out.iterations) + 1);
  for (int k = 0; k <= out.iterations; ++k) {
    out.levels.push_back(scale_by_ratio(h.levels[static_cast<std::size_t>(k)],
                                        source.denominator, target.denominator));
  }
  return out;
}

GeneralizationResult generalize_htb(const FeatureSet& set, int levels_to_drop,
                                    const htb::HtbParams& params,
                                    double scale_factor) {
  if (set.empty()) throw EmptyInput("cannot generalize an empty feature set");
  if (levels_to_drop < 0) {
    throw NonPositiveValue("levels_to_drop must be >= 0");
  }
  if (!std::isfinite(scale_factor) || scale_factor <= 0.0) {
    throw NonPositiveValue("scale factor must be finite and positive");
  }
  htb::ValueSeries measures;
  measures.reserve(set.size());
  for (const Feature& f : set.features) measures.push_back(f.measure);
  htb::HtbResult classes = htb::head_tail_breaks(measures, params);
  if (levels_to_drop >= classes.ht_index) {
    throw TooManyLevelsDropped("classification yields " +
                               std::to_string(classes.ht_index) +
                               " levels, cannot drop " +
                               std::to_string(levels_to_drop));
  }
  FeatureSet kept;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (classes.assignments[i] > levels_to_drop) {
      kept.features.push_back(set.features[i]);
    }
  }
  GeneralizationResult result;
  result.retained = scale_uniform(kept, scale_factor);
  result.dropped_count = set.size() - kept.size();
  result.levels_dropped = levels_to_drop;
  double cutoff = std::numeric_limits<double>::infinity();
  for (const Feature& f : kept.features) cutoff = std::min(cutoff, f.measure);
  result.cutoff_measure = cutoff;
  return result;
}

GeneralizationResult generalize_topfer(const FeatureSet& set, MapScale source,
                                       MapScale target, double constant) {
  if (set.empty()) throw EmptyInput("cannot generalize an empty feature set");
  std::int64_t n = topfer_select_count(static_cast<std::int64_t>(set.size()),
                                       source, target, constant);
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return set.features[a].measure > set.features[b].measure;
  });
  order.resize(static_cast<std::size_t>(std::min<std::int64_t>(
      n, static_cast<std::int64_t>(set.size()))));
  std::sort(order.begin(), order.end());  // restore input order among kept

  FeatureSet kept;
  kept.features.reserve(order.size());
  for (std::size_t idx : order) kept.features.push_back(set.features[idx]);

  GeneralizationResult result;
  result.retained =
      scale_by_ratio(kept, source.denominator, target.denominator);
  result.dropped_count = set.size() - kept.size();
  if (!kept.empty()) {
    double cutoff = std::numeric_limits<double>::infinity();
    for (const Feature& f : kept.features) cutoff = std::min(cutoff, f.measure);
    result.cutoff_measure = cutoff;
  }
  return result;
}

}  // namespace fractmap::generalize
