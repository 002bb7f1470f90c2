#pragma once

#include <span>
#include <string>
#include <vector>

#include "fractmap/fractal.hpp"
#include "fractmap/geometry.hpp"
#include "fractmap/rng.hpp"
#include "fractmap/textmap.hpp"

namespace fractmap::io {

struct LevelStyle {
  std::string fill;
  double stroke_width = 1.0;
};

struct RenderStyle {
  double canvas_width = 800.0;
  double canvas_height = 600.0;
  double margin = 40.0;
  double point_radius = 3.0;        // unclassified point symbols
  double max_symbol_radius = 18.0;  // top-level classified symbol
  std::string stroke = "#1f2933";
  std::string background = "#ffffff";
  std::vector<LevelStyle> levels;  // levels[0] styles level 1 (lowest)
};

// Blue ramp with level_count entries, level 1 lightest, top darkest.
RenderStyle default_style(int level_count = 1);

// Plain rendering: open polylines stroked, closed rings filled, points
// as fixed-radius circles. Geometry is fitted to the canvas inside the
// margin, y axis pointing up.
std::string render_svg(const FeatureSet& set,
                       const RenderStyle& style = default_style());

// Deepest construction level of a generated pattern.
std::string render_svg(const fractal::HierarchicalFeature& pattern,
                       const RenderStyle& style = default_style());

// Classified rendering: levels[i] (1-based) picks feature i's fill, and
// point symbols get one radius per level, max_symbol_radius scaled by
// sqrt(level mean measure / top-level mean measure) — non-decreasing in
// level. Throws StyleLevelMismatch when the style carries fewer level
// entries than the top level or the level list length differs from the
// set.
std::string render_svg_classified(const FeatureSet& set,
                                  std::span<const int> levels,
                                  const RenderStyle& style);

struct PlacedWord {
  std::string token;
  double x = 0.0;  // box center, canvas coordinates
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  double font_size = 0.0;
  int level = 1;
};

// Greedy seeded spiral placement in table order (largest frequencies
// first); bounding boxes never overlap — words the spiral cannot fit go
// into rows below all placed content.
std::vector<PlacedWord> layout_word_cloud(const textmap::WordLevelTable& table,
                                          double canvas_width,
                                          double canvas_height, double margin,
                                          RandomSeed seed);

std::string render_svg_word_cloud(const textmap::WordLevelTable& table,
                                  const RenderStyle& style, RandomSeed seed);

}  // namespace fractmap::io
