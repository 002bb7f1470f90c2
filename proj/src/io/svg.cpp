#include "fractmap/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fractmap/io/format.hpp"

namespace fractmap::io {

namespace {

struct Rgb {
  int r = 0;
  int g = 0;
  int b = 0;
};

constexpr Rgb kRampLight{198, 219, 239};  // light blue
constexpr Rgb kRampDark{8, 48, 107};      // dark blue

std::string hex_color(const Rgb& c) {
  char buffer[8];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", c.r, c.g, c.b);
  return buffer;
}

int lerp_channel(int a, int b, double t) {
  return static_cast<int>(std::lround(a + (b - a) * t));
}

// Canvas fit: world bounding box scaled uniformly into the margin frame,
// centered, y flipped so larger y draws higher.
struct CanvasTransform {
  double scale = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  double min_x = 0.0;
  double min_y = 0.0;
  double canvas_height = 0.0;
  double margin = 0.0;

  double x(double wx) const { return margin + offset_x + (wx - min_x) * scale; }
  double y(double wy) const {
    return canvas_height - margin - offset_y - (wy - min_y) * scale;
  }
  Point map(const Point& p) const { return {x(p.x), y(p.y)}; }
};

CanvasTransform fit_transform(const BoundingBox& box, const RenderStyle& style) {
  CanvasTransform t;
  t.min_x = box.min.x;
  t.min_y = box.min.y;
  t.canvas_height = style.canvas_height;
  t.margin = style.margin;
  double avail_w = style.canvas_width - 2.0 * style.margin;
  double avail_h = style.canvas_height - 2.0 * style.margin;
  if (avail_w <= 0.0 || avail_h <= 0.0) {
    throw NonPositiveValue("canvas leaves no room inside the margin");
  }
  double span_x = box.max.x - box.min.x;
  double span_y = box.max.y - box.min.y;
  double sx = span_x > 0.0 ? avail_w / span_x : std::numeric_limits<double>::infinity();
  double sy = span_y > 0.0 ? avail_h / span_y : std::numeric_limits<double>::infinity();
  t.scale = std::min(sx, sy);
  if (!std::isfinite(t.scale)) t.scale = 1.0;  // single point: no stretch
  t.offset_x = (avail_w - span_x * t.scale) / 2.0;
  t.offset_y = (avail_h - span_y * t.scale) / 2.0;
  return t;
}

std::string svg_open(const RenderStyle& style) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  out += format_coord(style.canvas_width);
  out += "\" height=\"";
  out += format_coord(style.canvas_height);
  out += "\" viewBox=\"0 0 ";
  out += format_coord(style.canvas_width);
  out += ' ';
  out += format_coord(style.canvas_height);
  out += "\">\n<rect width=\"100%\" height=\"100%\" fill=\"";
  out += style.background;
  out += "\"/>\n";
  return out;
}

void append_path(std::string& out, const Polyline& line, const CanvasTransform& t,
                 const std::string& stroke, double stroke_width,
                 const std::string& fill) {
  out += "<path d=\"";
  for (std::size_t i = 0; i < line.vertices.size(); ++i) {
    bool closing = line.closed() && i + 1 == line.vertices.size();
    if (closing) break;
    Point p = t.map(line.vertices[i]);
    out += (i == 0) ? 'M' : 'L';
    out += format_coord(p.x);
    out += ' ';
    out += format_coord(p.y);
  }
  if (line.closed()) out += 'Z';
  out += "\" fill=\"";
  out += fill;
  out += "\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"";
  out += format_coord(stroke_width);
  out += "\"/>\n";
}

void append_circle(std::string& out, const Point& center, double radius,
                   const std::string& fill) {
  out += "<circle cx=\"";
  out += format_coord(center.x);
  out += "\" cy=\"";
  out += format_coord(center.y);
  out += "\" r=\"";
  out += format_coord(radius);
  out += "\" fill=\"";
  out += fill;
  out += "\"/>\n";
}

const LevelStyle& level_style(const RenderStyle& style, int level) {
  return style.levels[static_cast<std::size_t>(level - 1)];
}

}  // namespace

RenderStyle default_style(int level_count) {
  if (level_count < 1) throw NonPositiveValue("style needs at least 1 level");
  RenderStyle style;
  style.levels.reserve(static_cast<std::size_t>(level_count));
  for (int i = 0; i < level_count; ++i) {
    double t = level_count == 1
                   ? 1.0
                   : static_cast<double>(i) / static_cast<double>(level_count - 1);
    Rgb c{lerp_channel(kRampLight.r, kRampDark.r, t),
          lerp_channel(kRampLight.g, kRampDark.g, t),
          lerp_channel(kRampLight.b, kRampDark.b, t)};
    style.levels.push_back({hex_color(c), 1.0});
  }
  return style;
}

std::string render_svg(const FeatureSet& set, const RenderStyle& style) {
  if (set.empty()) throw EmptyGeometry("nothing to render");
  if (style.levels.empty()) throw StyleLevelMismatch("style has no level entries");
  CanvasTransform t = fit_transform(bounding_box(set), style);
  std::string out = svg_open(style);
  const LevelStyle& base = style.levels.front();
  for (const Feature& f : set.features) {
    if (const Point* p = std::get_if<Point>(&f.geometry)) {
      append_circle(out, t.map(*p), style.point_radius, base.fill);
    } else {
      const Polyline& line = std::get<Polyline>(f.geometry);
      if (line.closed()) {
        append_path(out, line, t, style.stroke, base.stroke_width, base.fill);
      } else {
        append_path(out, line, t, style.stroke, base.stroke_width, "none");
      }
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_svg(const fractal::HierarchicalFeature& pattern,
                       const RenderStyle& style) {
  return render_svg(pattern.base(), style);
}

std::string render_svg_classified(const FeatureSet& set,
                                  std::span<const int> levels,
                                  const RenderStyle& style) {
  if (set.empty()) throw EmptyGeometry("nothing to render");
  if (levels.size() != set.size()) {
    throw StyleLevelMismatch("one level per feature required");
  }
  int top = 0;
  for (int level : levels) {
    if (level < 1) throw StyleLevelMismatch("levels are 1-based");
    top = std::max(top, level);
  }
  if (static_cast<std::size_t>(top) > style.levels.size()) {
    throw StyleLevelMismatch("style has fewer level entries than the data's top level");
  }

  // One symbol radius per level: max radius scaled by the square root of
  // the level's mean measure relative to the top level's.
  std::vector<double> mean_measure(static_cast<std::size_t>(top), 0.0);
  std::vector<std::size_t> members(static_cast<std::size_t>(top), 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::size_t slot = static_cast<std::size_t>(levels[i] - 1);
    mean_measure[slot] += set.features[i].measure;
    ++members[slot];
  }
  for (std::size_t i = 0; i < mean_measure.size(); ++i) {
    if (members[i] > 0) mean_measure[i] /= static_cast<double>(members[i]);
  }
  double top_mean = mean_measure.back();
  std::vector<double> radius(static_cast<std::size_t>(top), style.max_symbol_radius);
  for (std::size_t i = 0; i < radius.size(); ++i) {
    if (top_mean > 0.0) {
      radius[i] = style.max_symbol_radius * std::sqrt(mean_measure[i] / top_mean);
    }
  }

  CanvasTransform t = fit_transform(bounding_box(set), style);
  std::string out = svg_open(style);
  // Lower levels first so top-level symbols draw on top.
  for (int level = 1; level <= top; ++level) {
    const LevelStyle& ls = level_style(style, level);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (levels[i] != level) continue;
      const Feature& f = set.features[i];
      if (const Point* p = std::get_if<Point>(&f.geometry)) {
        append_circle(out, t.map(*p), radius[static_cast<std::size_t>(level - 1)],
                      ls.fill);
      } else {
        const Polyline& line = std::get<Polyline>(f.geometry);
        if (line.closed()) {
          append_path(out, line, t, style.stroke, ls.stroke_width, ls.fill);
        } else {
          append_path(out, line, t, ls.fill, ls.stroke_width, "none");
        }
      }
    }
  }
  out += "</svg>\n";
  return out;
}

std::vector<PlacedWord> layout_word_cloud(const textmap::WordLevelTable& table,
                                          double canvas_width,
                                          double canvas_height, double margin,
                                          RandomSeed seed) {
  if (table.rows.empty()) throw EmptySeries("no words to place");
  SplitMix64 rng(seed);
  double cx = canvas_width / 2.0;
  double cy = canvas_height / 2.0;
  std::vector<PlacedWord> placed;
  placed.reserve(table.rows.size());

  auto overlaps = [&](double x, double y, double w, double h) {
    for (const PlacedWord& p : placed) {
      if (std::abs(x - p.x) < (w + p.width) / 2.0 &&
          std::abs(y - p.y) < (h + p.height) / 2.0) {
        return true;
      }
    }
    return false;
  };
  auto in_bounds = [&](double x, double y, double w, double h) {
    return x - w / 2.0 >= margin && x + w / 2.0 <= canvas_width - margin &&
           y - h / 2.0 >= margin && y + h / 2.0 <= canvas_height - margin;
  };

  for (const textmap::WordLevel& row : table.rows) {
    double size = row.display_size;
    // Rough glyph box; exact metrics are renderer-dependent, the layout
    // contract is only pairwise non-overlap of these boxes.
    double w = 0.60 * size * static_cast<double>(row.token.size());
    double h = 1.00 * size;
    double theta0 = rng.next_unit() * 2.0 * std::numbers::pi;
    bool done = false;
    for (int k = 0; k < 4000 && !done; ++k) {
      double theta = theta0 + 0.35 * static_cast<double>(k);
      double r = 0.45 * static_cast<double>(k);
      double x = cx + r * std::cos(theta);
      double y = cy + r * std::sin(theta);
      if (!in_bounds(x, y, w, h)) continue;
      if (overlaps(x, y, w, h)) continue;
      placed.push_back({row.token, x, y, w, h, size, row.level});
      done = true;
    }
    if (!done) {
      // Below everything already placed: never overlaps.
      double bottom = canvas_height - margin;
      for (const PlacedWord& p : placed) {
        bottom = std::max(bottom, p.y + p.height / 2.0);
      }
      placed.push_back({row.token, cx, bottom + h / 2.0 + 2.0, w, h, size, row.level});
    }
  }
  return placed;
}

std::string render_svg_word_cloud(const textmap::WordLevelTable& table,
                                  const RenderStyle& style, RandomSeed seed) {
  if (static_cast<std::size_t>(table.ht_index) > style.levels.size()) {
    throw StyleLevelMismatch("style has fewer level entries than the cloud's levels");
  }
  std::vector<PlacedWord> placed = layout_word_cloud(
      table, style.canvas_width, style.canvas_height, style.margin, seed);
  std::string out = svg_open(style);
  for (const PlacedWord& word : placed) {
    out += "<text x=\"";
    out += format_coord(word.x);
    out += "\" y=\"";
    out += format_coord(word.y);
    out += "\" font-size=\"";
    out += format_coord(word.font_size);
    out += "\" fill=\"";
    out += level_style(style, word.level).fill;
    out += "\" text-anchor=\"middle\" dominant-baseline=\"central\" "
           "font-family=\"sans-serif\">";
    out += escape_xml(word.token);
    out += "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fractmap::io
