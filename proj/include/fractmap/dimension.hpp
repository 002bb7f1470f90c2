#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fractmap/geometry.hpp"

namespace fractmap::dimension {

// One divider/box measurement: count of yardstick steps (or occupied
// cells) at one yardstick, and the implied length count * yardstick.
struct MeasurementRow {
  double yardstick = 0.0;
  double count = 0.0;
  double length = 0.0;
};

// Rows ordered by strictly decreasing yardstick.
struct MeasurementTable {
  std::vector<MeasurementRow> rows;
};

// Least-squares fit of log(count) against log(1/yardstick); the scaling
// exponent (fractal dimension estimate) is the slope.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double dimension = 0.0;
};

// Cell shape used by box counting. Square is the classic axis-aligned
// grid; Triangular tiles the plane with alternating up/down equilateral
// cells (rows shifted half a side), which aligns exactly with triangular
// subdivision patterns the way the square grid aligns with square ones.
enum class GridLattice { Square, Triangular };

// Walk the polyline from its first vertex, repeatedly advancing to the
// first point along the remaining path at straight-line distance exactly
// `yardstick` from the current anchor. Returns whole steps plus the
// fractional remainder (anchor-to-end distance / yardstick). Throws
// YardstickTooLarge when no point of the polyline is that far from the
// start.
double divider_walk(const Polyline& line, double yardstick);

// divider_walk at each yardstick (deduplicated, descending) plus the
// power-law fit of the counts.
std::pair<MeasurementTable, PowerLawFit> richardson_fit(
    const Polyline& line, std::span<const double> yardsticks);

// Overlay a grid of cells of each size, anchored at the geometry's
// bounding-box minimum corner, and count cells whose overlap with the
// geometry is positive (length for segments, area for closed rings).
// Closed rings count as filled cells, open polylines as bare curves.
std::pair<MeasurementTable, PowerLawFit> box_count(
    const FeatureSet& set, std::span<const double> box_sizes,
    GridLattice lattice = GridLattice::Square);
std::pair<MeasurementTable, PowerLawFit> box_count(
    const Polyline& line, std::span<const double> box_sizes,
    GridLattice lattice = GridLattice::Square);

// Ordinary least squares on (log x, log y). Throws NonPositiveValue for
// non-positive data, DegenerateFit when the x values do not span.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

}  // namespace fractmap::dimension
