#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fractmap/errors.hpp"

namespace fractmap {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Ordered vertex chain. At least two vertices, consecutive vertices
// distinct. A chain whose first and last vertices coincide is treated as a
// closed ring (polygon / filled cell).
struct Polyline {
  std::vector<Point> vertices;

  bool closed() const {
    return vertices.size() >= 4 && vertices.front() == vertices.back();
  }

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

using Geometry = std::variant<Point, Polyline>;

// A map feature: geometry plus a strictly positive measure (size, length,
// population, frequency, ...) and free-form string attributes.
struct Feature {
  Geometry geometry;
  double measure = 1.0;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct FeatureSet {
  std::vector<Feature> features;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

struct BoundingBox {
  Point min;
  Point max;
};

// Throws InvalidGeometry unless the polyline has >= 2 vertices, finite
// coordinates, and no repeated consecutive vertex.
void validate_polyline(const Polyline& line);

// Throws NonPositiveValue unless the measure is finite and > 0.
void validate_measure(double measure);

// Sum of Euclidean segment lengths. Validates the polyline.
double polyline_length(const Polyline& line);

double distance(const Point& a, const Point& b);

// Bounding box over all geometry in the set (point features included).
// Throws EmptyGeometry when the set holds no coordinates.
BoundingBox bounding_box(const FeatureSet& set);
BoundingBox bounding_box(const Polyline& line);

// --- transforms (pure; inputs are not modified) -------------------------

FeatureSet translate(const FeatureSet& set, double dx, double dy);
FeatureSet rotate(const FeatureSet& set, double radians);
Polyline translate(const Polyline& line, double dx, double dy);
Polyline rotate(const Polyline& line, double radians);

// Uniform scaling about the origin by an arbitrary factor.
FeatureSet scale_uniform(const FeatureSet& set, double factor);
Polyline scale_uniform(const Polyline& line, double factor);

// Uniform scaling about the origin by the exact rational num/den. The
// division is applied once per prime factor of the reduced denominator, in
// ascending order, so chained reductions compose bit-exactly:
// scaling by 1/3 twice performs the same operation sequence as scaling by
// 1/9 once. Measures are left untouched.
double scale_by_ratio(double value, std::uint64_t num, std::uint64_t den);
FeatureSet scale_by_ratio(const FeatureSet& set, std::uint64_t num, std::uint64_t den);

}  // namespace fractmap
