#include "fractmap/fractal.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fractmap::fractal {

namespace {

constexpr double kHalfSqrt3 = 0.8660254037844386;  // sqrt(3)/2

void check_iterations(int iterations, int cap, const char* what) {
  if (iterations < 0) {
    throw NonPositiveValue(std::string(what) + " must be >= 0");
  }
  if (cap < 0) throw NonPositiveValue("iteration cap must be >= 0");
  if (iterations > cap) {
    throw IterationCap(std::string(what) + " " + std::to_string(iterations) +
                       " exceeds cap " + std::to_string(cap));
  }
}

Feature polyline_feature(Polyline line) {
  Feature f;
  f.measure = polyline_length(line);
  f.geometry = std::move(line);
  return f;
}

// Replace each segment of `line` with the 4-segment generator; the bump
// apex sits at apex_height * segment_length off the chosen side.
Polyline subdivide_koch(const Polyline& line, double apex_height,
                        const SidePicker& pick_left) {
  Polyline next;
  next.vertices.reserve((line.vertices.size() - 1) * 4 + 1);
  for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
    Point a = line.vertices[i];
    Point b = line.vertices[i + 1];
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    Point p1{a.x + dx / 3.0, a.y + dy / 3.0};
    Point p3{a.x + 2.0 * dx / 3.0, a.y + 2.0 * dy / 3.0};
    Point mid{a.x + dx / 2.0, a.y + dy / 2.0};
    // Left normal of travel, same length as the segment.
    double nx = -dy;
    double ny = dx;
    double side = pick_left() ? 1.0 : -1.0;
    Point apex{mid.x + side * apex_height * nx, mid.y + side * apex_height * ny};
    next.vertices.push_back(a);
    next.vertices.push_back(p1);
    next.vertices.push_back(apex);
    next.vertices.push_back(p3);
  }
  next.vertices.push_back(line.vertices.back());
  return next;
}

Polyline square_cell(double x, double y, double s) {
  return Polyline{{{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}, {x, y}}};
}

Polyline triangle_cell(double x, double y, double s) {
  return Polyline{{{x, y}, {x + s, y}, {x + s / 2.0, y + s * kHalfSqrt3}, {x, y}}};
}

struct CellOrigin {
  double x = 0.0;
  double y = 0.0;
};

}  // namespace

HierarchicalFeature koch_with_side_picker(int iterations, double apex_height,
                                          const SidePicker& pick_left, int cap) {
  check_iterations(iterations, cap, "iterations");
  if (!(apex_height > 0.0) || apex_height > kClassicApexHeight) {
    throw InvalidApexHeight("apex height must lie in (0, sqrt(3)/6]");
  }
  HierarchicalFeature result;
  result.scaling_ratio = {1, 3};
  result.iterations = iterations;
  Polyline current{{{0.0, 0.0}, {1.0, 0.0}}};
  result.levels.push_back(FeatureSet{{polyline_feature(current)}});
  for (int k = 1; k <= iterations; ++k) {
    current = subdivide_koch(current, apex_height, pick_left);
    result.levels.push_back(FeatureSet{{polyline_feature(current)}});
  }
  return result;
}

HierarchicalFeature koch_curve(int iterations, int cap) {
  return koch_with_side_picker(
      iterations, kClassicApexHeight, [] { return true; }, cap);
}

HierarchicalFeature koch_random(int iterations, double apex_height,
                                RandomSeed seed, int cap) {
  SplitMix64 rng(seed);
  return koch_with_side_picker(
      iterations, apex_height, [&rng] { return rng.next_bool(); }, cap);
}

HierarchicalFeature sierpinski_carpet(int depth, int cap) {
  check_iterations(depth, cap, "depth");
  HierarchicalFeature result;
  result.scaling_ratio = {1, 3};
  result.iterations = depth;

  std::vector<CellOrigin> cells{{0.0, 0.0}};
  double side = 1.0;
  for (int k = 0; k <= depth; ++k) {
    FeatureSet level;
    level.features.reserve(cells.size());
    for (const CellOrigin& c : cells) {
      Feature f;
      f.geometry = square_cell(c.x, c.y, side);
      f.measure = side * side;
      level.features.push_back(std::move(f));
    }
    result.levels.push_back(std::move(level));
    if (k == depth) break;
    std::vector<CellOrigin> next;
    next.reserve(cells.size() * 8);
    double child = side / 3.0;
    for (const CellOrigin& c : cells) {
      for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
          if (row == 1 && col == 1) continue;  // center ninth removed
          next.push_back({c.x + col * child, c.y + row * child});
        }
      }
    }
    cells = std::move(next);
    side = child;
  }
  return result;
}

HierarchicalFeature sierpinski_triangle(int depth, int cap) {
  check_iterations(depth, cap, "depth");
  HierarchicalFeature result;
  result.scaling_ratio = {1, 2};
  result.iterations = depth;

  std::vector<CellOrigin> cells{{0.0, 0.0}};
  double side = 1.0;
  for (int k = 0; k <= depth; ++k) {
    FeatureSet level;
    level.features.reserve(cells.size());
    for (const CellOrigin& c : cells) {
      Feature f;
      f.geometry = triangle_cell(c.x, c.y, side);
      f.measure = side * side * (kHalfSqrt3 / 2.0);
      level.features.push_back(std::move(f));
    }
    result.levels.push_back(std::move(level));
    if (k == depth) break;
    std::vector<CellOrigin> next;
    next.reserve(cells.size() * 3);
    double child = side / 2.0;
    for (const CellOrigin& c : cells) {
      next.push_back({c.x, c.y});
      next.push_back({c.x + child, c.y});
      next.push_back({c.x + child / 2.0, c.y + child * kHalfSqrt3});
    }
    cells = std::move(next);
    side = child;
  }
  return result;
}

std::vector<std::int64_t> fibonacci(int n) {
  if (n < 1) throw EmptySeries("fibonacci count must be >= 1");
  // F(92) is the largest Fibonacci number fitting a signed 64-bit integer.
  if (n > 92) {
    throw Overflow("fibonacci count " + std::to_string(n) +
                   " exceeds the signed 64-bit range (max 92)");
  }
  std::vector<std::int64_t> seq;
  seq.reserve(static_cast<std::size_t>(n));
  std::int64_t a = 1;
  std::int64_t b = 1;
  for (int i = 0; i < n; ++i) {
    seq.push_back(a);
    std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return seq;
}

std::vector<double> golden_ratios(int n) {
  if (n < 2) throw EmptySeries("ratio sequence needs at least 2 terms");
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(n - 1));
  double a = 1.0;
  double b = 1.0;
  for (int k = 1; k < n; ++k) {
    ratios.push_back(b / a);
    double next = a + b;
    a = b;
    b = next;
  }
  return ratios;
}

FeatureSet golden_rectangles(int n) {
  if (n < 1) throw EmptySeries("square count must be >= 1");
  // n + 1 terms: the frame's long side is the next Fibonacci number.
  std::vector<std::int64_t> fib = fibonacci(n + 1);

  FeatureSet out;
  // Frame bounds; the first unit square seeds them.
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  for (int k = 1; k <= n; ++k) {
    double s = static_cast<double>(fib[static_cast<std::size_t>(k - 1)]);
    double sx0 = 0.0, sy0 = 0.0;
    if (k == 1) {
      sx0 = 0.0;
      sy0 = 0.0;
    } else {
      switch ((k - 2) % 4) {
        case 0:  // attach right
          sx0 = x1;
          sy0 = y1 - s;
          break;
        case 1:  // attach above
          sx0 = x1 - s;
          sy0 = y1;
          break;
        case 2:  // attach left
          sx0 = x0 - s;
          sy0 = y0;
          break;
        default:  // attach below
          sx0 = x0;
          sy0 = y0 - s;
          break;
      }
      x0 = std::min(x0, sx0);
      y0 = std::min(y0, sy0);
      x1 = std::max(x1, sx0 + s);
      y1 = std::max(y1, sy0 + s);
    }
    Feature f;
    f.geometry = square_cell(sx0, sy0, s);
    f.measure = s;
    f.attributes["role"] = "square";
    f.attributes["index"] = std::to_string(k);
    out.features.push_back(std::move(f));
  }
  Feature frame;
  frame.geometry =
      Polyline{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}};
  frame.measure = std::max(x1 - x0, y1 - y0);
  frame.attributes["role"] = "frame";
  out.features.push_back(std::move(frame));
  return out;
}

CitySet zipf_cities(int n, RandomSeed seed) {
  if (n < 1) throw EmptySeries("city count must be >= 1");
  SplitMix64 rng(seed);
  CitySet out;
  out.features.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Feature f;
    double x = rng.next_unit();
    double y = rng.next_unit();
    f.geometry = Point{x, y};
    f.measure = 1.0 / static_cast<double>(k);
    f.attributes["rank"] = std::to_string(k);
    out.features.push_back(std::move(f));
  }
  return out;
}

}  // namespace fractmap::fractal
