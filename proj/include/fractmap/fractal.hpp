#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fractmap/geometry.hpp"
#include "fractmap/rng.hpp"
#include "fractmap/scale.hpp"

namespace fractmap::fractal {

// Apex height of the classic Koch generator, relative to segment length:
// the equilateral bump over the middle third peaks at sqrt(3)/6.
inline constexpr double kClassicApexHeight = 0.28867513459481287;

// Iteration caps are configuration guards against exponential growth; a
// request beyond the cap throws IterationCap.
inline constexpr int kKochIterationCap = 12;
inline constexpr int kCarpetDepthCap = 8;
inline constexpr int kTriangleDepthCap = 12;

// A generated pattern together with its construction history. levels[0]
// is the initiator, levels[k] the k-th iteration; base() is the deepest
// level. scaling_ratio is the per-iteration size reduction of the parts.
struct HierarchicalFeature {
  std::vector<FeatureSet> levels;
  ScalingRatio scaling_ratio;
  int iterations = 0;

  const FeatureSet& base() const { return levels.back(); }
};

// Chooses the bump side for one segment replacement: true = left of
// travel (the classic side), false = right.
using SidePicker = std::function<bool()>;

// Classic Koch curve from the unit segment (0,0)-(1,0): each iteration
// replaces every segment with the 4-segment generator, bump on the left.
// Level k is a single polyline of 4^k segments of length (1/3)^k.
HierarchicalFeature koch_curve(int iterations, int cap = kKochIterationCap);

// Koch subdivision with a per-replacement side choice and configurable
// bump height (relative to segment length, in (0, sqrt(3)/6]). The picker
// is consulted once per replaced segment, in deterministic order.
HierarchicalFeature koch_with_side_picker(int iterations, double apex_height,
                                          const SidePicker& pick_left,
                                          int cap = kKochIterationCap);

// Statistically self-similar Koch variant: bump sides drawn from a
// SplitMix64 stream. Same (iterations, apex_height, seed) always yields
// the same curve.
HierarchicalFeature koch_random(int iterations,
                                double apex_height = kClassicApexHeight,
                                RandomSeed seed = 42,
                                int cap = kKochIterationCap);

// Sierpinski carpet: level k holds 8^k closed square cells of side
// (1/3)^k inside the unit square (center ninth removed per subdivision).
// Cell measure = its area.
HierarchicalFeature sierpinski_carpet(int depth, int cap = kCarpetDepthCap);

// Sierpinski triangle: level k holds 3^k upward equilateral cells of side
// (1/2)^k inside the unit equilateral triangle. Cell measure = its area.
HierarchicalFeature sierpinski_triangle(int depth, int cap = kTriangleDepthCap);

// First n Fibonacci numbers starting 1, 1. Throws Overflow past the
// signed-64-bit range (n > 92).
std::vector<std::int64_t> fibonacci(int n);

// Consecutive Fibonacci ratios F(k+1)/F(k) for k = 1..n-1.
std::vector<double> golden_ratios(int n);

// n squares of Fibonacci side lengths packed counter-clockwise in the
// classic golden-spiral arrangement, plus the enclosing frame rectangle
// (last feature). Square attributes: role=square, index=k; frame:
// role=frame. Measures are the side length (frame: longer side).
FeatureSet golden_rectangles(int n);

// A set of point features whose measures follow Zipf's law exactly
// (city k has measure 1/k) with seeded uniform positions in [0,1]^2.
// Attribute rank=k on each city.
using CitySet = FeatureSet;
CitySet zipf_cities(int n, RandomSeed seed = 42);

}  // namespace fractmap::fractal
