#pragma once

#include <cstddef>
#include <optional>

#include "fractmap/fractal.hpp"
#include "fractmap/geometry.hpp"
#include "fractmap/htb.hpp"
#include "fractmap/scale.hpp"

namespace fractmap::generalize {

// Outcome of a generalization step. levels_dropped applies to the
// hierarchical and head/tail modes; cutoff_measure is the smallest
// retained measure in the selection modes (absent when nothing was
// retained).
struct GeneralizationResult {
  FeatureSet retained;
  std::size_t dropped_count = 0;
  int levels_dropped = 0;
  std::optional<double> cutoff_measure;
};

// Scale-driven truncation of a constructed hierarchy: the map-scale step
// source -> target must be an integer power m of the pattern's scaling
// ratio reciprocal; the result is construction level (iterations - m),
// uniformly reduced by source/target denominator ratio. Throws
// RatioMismatch for incompatible scale steps, InsufficientDepth when the
// construction has fewer than m levels, InvalidOrder when target is a
// larger scale than source.
GeneralizationResult generalize_hierarchical(const fractal::HierarchicalFeature& h,
                                             MapScale source, MapScale target);

// Same reduction, but keeps the (truncated, rescaled) construction
// hierarchy so further reductions chain exactly.
fractal::HierarchicalFeature generalize_hierarchical_pattern(
    const fractal::HierarchicalFeature& h, MapScale source, MapScale target);

// Head/tail-breaks selection on feature measures: classify, drop the
// lowest levels_to_drop levels, scale geometry by scale_factor. Throws
// TooManyLevelsDropped when fewer levels exist, EmptyInput for an empty
// set.
GeneralizationResult generalize_htb(const FeatureSet& set, int levels_to_drop,
                                    const htb::HtbParams& params = {},
                                    double scale_factor = 1.0);

// Selection by the radical law: keep topfer_select_count(...) features of
// largest measure (ties by input order), geometry reduced by the scale
// ratio.
GeneralizationResult generalize_topfer(const FeatureSet& set, MapScale source,
                                       MapScale target, double constant = 1.0);

}  // namespace fractmap::generalize
