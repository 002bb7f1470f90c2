#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fractmap/fractal.hpp"
#include "fractmap/generalize.hpp"
#include "fractmap/geometry.hpp"

using namespace fractmap;
using fractal::HierarchicalFeature;
using generalize::GeneralizationResult;

namespace {

const Polyline& only_polyline(const FeatureSet& set) {
  REQUIRE(set.size() == 1);
  return std::get<Polyline>(set.features.front().geometry);
}

double max_vertex_deviation(const Polyline& a, const Polyline& b) {
  REQUIRE(a.vertices.size() == b.vertices.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    worst = std::max(worst, distance(a.vertices[i], b.vertices[i]));
  }
  return worst;
}

// Cells compared as exact coordinate lists, order-insensitively.
std::vector<std::vector<Point>> cell_list(const FeatureSet& set) {
  std::vector<std::vector<Point>> cells;
  for (const Feature& f : set.features) {
    cells.push_back(std::get<Polyline>(f.geometry).vertices);
  }
  std::sort(cells.begin(), cells.end(),
            [](const std::vector<Point>& a, const std::vector<Point>& b) {
              for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
                if (a[i].x != b[i].x) return a[i].x < b[i].x;
                if (a[i].y != b[i].y) return a[i].y < b[i].y;
              }
              return a.size() < b.size();
            });
  return cells;
}

}  // namespace

TEST_CASE("koch hierarchy reduces to the shallower curve") {
  HierarchicalFeature koch3 = fractal::koch_curve(3);
  GeneralizationResult to150 = generalize::generalize_hierarchical(
      koch3, MapScale{50000}, MapScale{150000});
  CHECK(to150.levels_dropped == 1);
  FeatureSet expected2 = scale_by_ratio(fractal::koch_curve(2).base(), 1, 3);
  CHECK(max_vertex_deviation(only_polyline(to150.retained),
                             only_polyline(expected2)) < 1e-9);

  GeneralizationResult to450 = generalize::generalize_hierarchical(
      koch3, MapScale{50000}, MapScale{450000});
  CHECK(to450.levels_dropped == 2);
  FeatureSet expected1 = scale_by_ratio(fractal::koch_curve(1).base(), 1, 9);
  CHECK(max_vertex_deviation(only_polyline(to450.retained),
                             only_polyline(expected1)) < 1e-9);
}

TEST_CASE("iteration-equivalence holds across all reachable reductions") {
  for (int n = 1; n <= 8; ++n) {
    HierarchicalFeature full = fractal::koch_curve(n);
    std::uint64_t target_den = 50000;
    for (int m = 1; m < n; ++m) {
      target_den *= 3;
      GeneralizationResult r = generalize::generalize_hierarchical(
          full, MapScale{50000}, MapScale{target_den});
      CHECK(r.levels_dropped == m);
      std::uint64_t ratio_den = 1;
      for (int i = 0; i < m; ++i) ratio_den *= 3;
      FeatureSet expected =
          scale_by_ratio(fractal::koch_curve(n - m).base(), 1, ratio_den);
      CHECK(max_vertex_deviation(only_polyline(r.retained),
                                 only_polyline(expected)) < 1e-9);
    }
  }
}

TEST_CASE("triangle hierarchy reduces cell-for-cell") {
  HierarchicalFeature tri3 = fractal::sierpinski_triangle(3);
  GeneralizationResult r = generalize::generalize_hierarchical(
      tri3, MapScale{50000}, MapScale{100000});
  CHECK(r.levels_dropped == 1);
  FeatureSet expected =
      scale_by_ratio(fractal::sierpinski_triangle(2).base(), 1, 2);
  CHECK(cell_list(r.retained) == cell_list(expected));
}

TEST_CASE("sierpinski cell sets match exactly at every depth") {
  for (int depth = 1; depth <= 5; ++depth) {
    HierarchicalFeature carpet = fractal::sierpinski_carpet(depth);
    HierarchicalFeature triangle = fractal::sierpinski_triangle(depth);
    std::uint64_t carpet_den = 50000;
    std::uint64_t triangle_den = 50000;
    for (int m = 1; m <= depth; ++m) {
      carpet_den *= 3;
      triangle_den *= 2;
      GeneralizationResult c = generalize::generalize_hierarchical(
          carpet, MapScale{50000}, MapScale{carpet_den});
      std::uint64_t carpet_ratio = 1;
      for (int i = 0; i < m; ++i) carpet_ratio *= 3;
      FeatureSet c_expected = scale_by_ratio(
          fractal::sierpinski_carpet(depth - m).base(), 1, carpet_ratio);
      CHECK(cell_list(c.retained) == cell_list(c_expected));

      GeneralizationResult t = generalize::generalize_hierarchical(
          triangle, MapScale{50000}, MapScale{triangle_den});
      std::uint64_t triangle_ratio = 1;
      for (int i = 0; i < m; ++i) triangle_ratio *= 2;
      FeatureSet t_expected = scale_by_ratio(
          fractal::sierpinski_triangle(depth - m).base(), 1, triangle_ratio);
      CHECK(cell_list(t.retained) == cell_list(t_expected));
    }
  }
}

TEST_CASE("mismatched scale steps are refused") {
  HierarchicalFeature carpet3 = fractal::sierpinski_carpet(3);
  CHECK_THROWS_AS(generalize::generalize_hierarchical(
                      carpet3, MapScale{50000}, MapScale{100000}),
                  RatioMismatch);
  HierarchicalFeature koch3 = fractal::koch_curve(3);
  CHECK_THROWS_AS(generalize::generalize_hierarchical(koch3, MapScale{50000},
                                                      MapScale{100000}),
                  RatioMismatch);
  CHECK_THROWS_AS(generalize::generalize_hierarchical(koch3, MapScale{50000},
                                                      MapScale{75000}),
                  RatioMismatch);
}

TEST_CASE("reductions deeper than the construction are refused") {
  HierarchicalFeature koch2 = fractal::koch_curve(2);
  CHECK_THROWS_AS(generalize::generalize_hierarchical(
                      koch2, MapScale{50000}, MapScale{50000 * 27}),
                  InsufficientDepth);
  CHECK_THROWS_AS(generalize::generalize_hierarchical(
                      koch2, MapScale{100000}, MapScale{50000}),
                  InvalidOrder);
}

TEST_CASE("equal scales return the deepest level unchanged") {
  HierarchicalFeature koch2 = fractal::koch_curve(2);
  GeneralizationResult r = generalize::generalize_hierarchical(
      koch2, MapScale{50000}, MapScale{50000});
  CHECK(r.levels_dropped == 0);
  CHECK(r.retained == koch2.base());
}

TEST_CASE("direct and staged reductions agree bit-for-bit") {
  HierarchicalFeature koch4 = fractal::koch_curve(4);
  GeneralizationResult direct = generalize::generalize_hierarchical(
      koch4, MapScale{50000}, MapScale{450000});
  HierarchicalFeature staged_pattern = generalize::generalize_hierarchical_pattern(
      koch4, MapScale{50000}, MapScale{150000});
  GeneralizationResult staged = generalize::generalize_hierarchical(
      staged_pattern, MapScale{150000}, MapScale{450000});
  CHECK(direct.retained == staged.retained);  // exact, not approximate

  HierarchicalFeature tri4 = fractal::sierpinski_triangle(4);
  GeneralizationResult tri_direct = generalize::generalize_hierarchical(
      tri4, MapScale{50000}, MapScale{200000});
  HierarchicalFeature tri_staged_pattern =
      generalize::generalize_hierarchical_pattern(tri4, MapScale{50000},
                                                  MapScale{100000});
  GeneralizationResult tri_staged = generalize::generalize_hierarchical(
      tri_staged_pattern, MapScale{100000}, MapScale{200000});
  CHECK(tri_direct.retained == tri_staged.retained);
}

TEST_CASE("htb selection keeps the measured head") {
  FeatureSet set;
  for (int i = 0; i < 8; ++i) {
    set.features.push_back(
        {Polyline{{{0.0, static_cast<double>(i)}, {1.0, static_cast<double>(i)}}},
         1.0,
         {}});
  }
  set.features.push_back({Polyline{{{0, 20}, {10, 20}}}, 10.0, {}});
  set.features.push_back({Polyline{{{0, 30}, {10, 30}}}, 10.0, {}});

  GeneralizationResult r = generalize::generalize_htb(set, 1);
  CHECK(r.retained.size() == 2);
  CHECK(r.dropped_count == 8);
  CHECK(r.levels_dropped == 1);
  REQUIRE(r.cutoff_measure.has_value());
  CHECK(*r.cutoff_measure == 10.0);
  for (const Feature& f : r.retained.features) CHECK(f.measure == 10.0);
}

TEST_CASE("htb selection with zero drops is the identity on membership") {
  FeatureSet set = fractal::zipf_cities(50, 3);
  GeneralizationResult r = generalize::generalize_htb(set, 0);
  CHECK(r.retained == set);
  CHECK(r.dropped_count == 0);
}

TEST_CASE("htb selection reproduces the six-city top level") {
  FeatureSet cities = fractal::zipf_cities(1023, 42);
  GeneralizationResult r =
      generalize::generalize_htb(cities, 3, htb::HtbParams{0.4, 4, 2});
  CHECK(r.retained.size() == 6);
  CHECK(r.dropped_count == 1017);
  // The six largest measures are 1, 1/2, ..., 1/6 in input order.
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.retained.features[i].measure ==
          1.0 / static_cast<double>(i + 1));
  }
}

TEST_CASE("htb selection separates retained and dropped measures") {
  FeatureSet cities = fractal::zipf_cities(300, 5);
  GeneralizationResult r = generalize::generalize_htb(cities, 1);
  double min_kept = 1e300;
  for (const Feature& f : r.retained.features) {
    min_kept = std::min(min_kept, f.measure);
  }
  CHECK(r.retained.size() + r.dropped_count == 300);
  double max_dropped = 0.0;
  for (const Feature& f : cities.features) {
    bool kept = false;
    for (const Feature& g : r.retained.features) {
      if (f.measure == g.measure) kept = true;
    }
    if (!kept) max_dropped = std::max(max_dropped, f.measure);
  }
  CHECK(min_kept > max_dropped);
}

TEST_CASE("htb selection scales retained geometry when asked") {
  FeatureSet set = fractal::zipf_cities(10, 1);
  GeneralizationResult r = generalize::generalize_htb(set, 0, {}, 0.5);
  for (std::size_t i = 0; i < set.size(); ++i) {
    Point original = std::get<Point>(set.features[i].geometry);
    Point reduced = std::get<Point>(r.retained.features[i].geometry);
    CHECK(reduced.x == original.x * 0.5);
    CHECK(reduced.y == original.y * 0.5);
  }
}

TEST_CASE("htb selection error branches") {
  FeatureSet set = fractal::zipf_cities(10, 1);
  CHECK_THROWS_AS(generalize::generalize_htb(set, 99), TooManyLevelsDropped);
  int levels = htb::ht_index([&] {
    htb::ValueSeries m;
    for (const Feature& f : set.features) m.push_back(f.measure);
    return m;
  }());
  CHECK_THROWS_AS(generalize::generalize_htb(set, levels),
                  TooManyLevelsDropped);
  FeatureSet empty;
  CHECK_THROWS_AS(generalize::generalize_htb(empty, 0), EmptyInput);
  CHECK_THROWS_AS(generalize::generalize_htb(set, -1), NonPositiveValue);
}

TEST_CASE("topfer selection keeps the largest measures in input order") {
  FeatureSet set;
  for (int i = 0; i < 100; ++i) {
    set.features.push_back(
        {Point{static_cast<double>(i), 0.0}, 100.0 - static_cast<double>(i), {}});
  }
  GeneralizationResult r = generalize::generalize_topfer(
      set, MapScale{500000}, MapScale{1000000});
  CHECK(r.retained.size() == 71);
  CHECK(r.dropped_count == 29);
  // Largest 71 measures are the first 71 features; order preserved.
  for (std::size_t i = 0; i < 71; ++i) {
    CHECK(r.retained.features[i].measure == 100.0 - static_cast<double>(i));
  }
  REQUIRE(r.cutoff_measure.has_value());
  CHECK(*r.cutoff_measure == 30.0);
}

TEST_CASE("topfer with equal scales keeps everything, unscaled") {
  FeatureSet set = fractal::zipf_cities(25, 2);
  GeneralizationResult r =
      generalize::generalize_topfer(set, MapScale{50000}, MapScale{50000});
  CHECK(r.retained == set);
  CHECK(r.dropped_count == 0);
}

TEST_CASE("topfer scales geometry by the denominator ratio") {
  FeatureSet set;
  set.features.push_back({Point{9.0, 18.0}, 2.0, {}});
  set.features.push_back({Point{3.0, 6.0}, 1.0, {}});
  GeneralizationResult r = generalize::generalize_topfer(
      set, MapScale{50000}, MapScale{450000});
  REQUIRE(r.retained.size() == 1);  // 2 * sqrt(1/9) = 2/3 rounds to 1
  Point p = std::get<Point>(r.retained.features[0].geometry);
  CHECK(p.x == 1.0);
  CHECK(p.y == 2.0);
  CHECK(r.retained.features[0].measure == 2.0);
}

TEST_CASE("topfer retention is non-increasing in the target denominator") {
  FeatureSet set = fractal::zipf_cities(100, 4);
  std::size_t previous = 1000;
  for (std::uint64_t den = 500000; den <= 5000000; den += 100000) {
    GeneralizationResult r = generalize::generalize_topfer(
        set, MapScale{500000}, MapScale{den});
    CHECK(r.retained.size() <= previous);
    previous = r.retained.size();
  }
}

TEST_CASE("topfer error branches") {
  FeatureSet set = fractal::zipf_cities(5, 1);
  CHECK_THROWS_AS(generalize::generalize_topfer(set, MapScale{100000},
                                                MapScale{50000}),
                  InvalidOrder);
  FeatureSet empty;
  CHECK_THROWS_AS(generalize::generalize_topfer(empty, MapScale{50000},
                                                MapScale{100000}),
                  EmptyInput);
}
