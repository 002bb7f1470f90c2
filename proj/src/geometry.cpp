#include "fractmap/geometry.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace fractmap {

namespace {

bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void extend(BoundingBox& box, const Point& p) {
  box.min.x = std::min(box.min.x, p.x);
  box.min.y = std::min(box.min.y, p.y);
  box.max.x = std::max(box.max.x, p.x);
  box.max.y = std::max(box.max.y, p.y);
}

BoundingBox empty_box() {
  const double inf = std::numeric_limits<double>::infinity();
  return {{inf, inf}, {-inf, -inf}};
}

// Prime factors of n in ascending order, with multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

template <typename PointFn>
Geometry map_geometry(const Geometry& g, PointFn&& fn) {
  if (const Point* p = std::get_if<Point>(&g)) return fn(*p);
  Polyline out = std::get<Polyline>(g);
  for (Point& v : out.vertices) v = fn(v);
  return out;
}

template <typename PointFn>
FeatureSet map_features(const FeatureSet& set, PointFn&& fn) {
  FeatureSet out = set;
  for (Feature& f : out.features) f.geometry = map_geometry(f.geometry, fn);
  return out;
}

}  // namespace

void validate_polyline(const Polyline& line) {
  if (line.vertices.size() < 2) {
    throw InvalidGeometry("polyline needs at least two vertices");
  }
  for (std::size_t i = 0; i < line.vertices.size(); ++i) {
    if (!finite(line.vertices[i])) {
      throw InvalidGeometry("polyline vertex " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && line.vertices[i] == line.vertices[i - 1]) {
      throw InvalidGeometry("repeated consecutive vertex at index " + std::to_string(i));
    }
  }
}

void validate_measure(double measure) {
  if (!std::isfinite(measure) || measure <= 0.0) {
    throw NonPositiveValue("measure must be finite and > 0");
  }
}

double distance(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

double polyline_length(const Polyline& line) {
  validate_polyline(line);
  double total = 0.0;
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    total += distance(line.vertices[i - 1], line.vertices[i]);
  }
  return total;
}

BoundingBox bounding_box(const Polyline& line) {
  validate_polyline(line);
  BoundingBox box = empty_box();
  for (const Point& v : line.vertices) extend(box, v);
  return box;
}

BoundingBox bounding_box(const FeatureSet& set) {
  BoundingBox box = empty_box();
  bool any = false;
  for (const Feature& f : set.features) {
    if (const Point* p = std::get_if<Point>(&f.geometry)) {
      extend(box, *p);
      any = true;
    } else {
      for (const Point& v : std::get<Polyline>(f.geometry).vertices) {
        extend(box, v);
        any = true;
      }
    }
  }
  if (!any) throw EmptyGeometry("feature set holds no coordinates");
  return box;
}

Polyline translate(const Polyline& line, double dx, double dy) {
  Polyline out = line;
  for (Point& v : out.vertices) v = {v.x + dx, v.y + dy};
  return out;
}

FeatureSet translate(const FeatureSet& set, double dx, double dy) {
  return map_features(set, [&](const Point& p) { return Point{p.x + dx, p.y + dy}; });
}

Polyline rotate(const Polyline& line, double radians) {
  const double c = std::cos(radians), s = std::sin(radians);
  Polyline out = line;
  for (Point& v : out.vertices) v = {c * v.x - s * v.y, s * v.x + c * v.y};
  return out;
}

FeatureSet rotate(const FeatureSet& set, double radians) {
  const double c = std::cos(radians), s = std::sin(radians);
  return map_features(set, [&](const Point& p) {
    return Point{c * p.x - s * p.y, s * p.x + c * p.y};
  });
}

Polyline scale_uniform(const Polyline& line, double factor) {
  Polyline out = line;
  for (Point& v : out.vertices) v = {v.x * factor, v.y * factor};
  return out;
}

FeatureSet scale_uniform(const FeatureSet& set, double factor) {
  return map_features(set, [&](const Point& p) { return Point{p.x * factor, p.y * factor}; });
}

double scale_by_ratio(double value, std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0) throw NonPositiveValue("scale ratio terms must be positive");
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  for (std::uint64_t p : prime_factors(den)) value /= static_cast<double>(p);
  if (num != 1) value *= static_cast<double>(num);
  return value;
}

FeatureSet scale_by_ratio(const FeatureSet& set, std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0) throw NonPositiveValue("scale ratio terms must be positive");
  const std::uint64_t g = std::gcd(num, den);
  const std::uint64_t rn = num / g, rd = den / g;
  const std::vector<std::uint64_t> factors = prime_factors(rd);
  auto apply = [&](double v) {
    for (std::uint64_t p : factors) v /= static_cast<double>(p);
    if (rn != 1) v *= static_cast<double>(rn);
    return v;
  };
  return map_features(set, [&](const Point& p) { return Point{apply(p.x), apply(p.y)}; });
}

}  // namespace fractmap
