#pragma once

#include <cstdint>
#include <span>

#include "fractmap/errors.hpp"

namespace fractmap {

// Representative fraction 1:denominator. Larger denominator = smaller scale.
struct MapScale {
  std::uint64_t denominator = 1;

  friend bool operator==(const MapScale&, const MapScale&) = default;
};

// Reduced linear size ratio between consecutive levels of a hierarchy,
// 0 < numerator/denominator < 1 (e.g. 1/3 for the Koch construction).
struct ScalingRatio {
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 2;

  friend bool operator==(const ScalingRatio&, const ScalingRatio&) = default;
};

// floor(x + 0.5): 70.5 -> 71, 2.5 -> 3.
std::int64_t round_half_up(double x);

// Number of sheets of the source series covered by one sheet of the derived
// (coarser) series: r^2 where r = derived_den / source_den must be an
// integer. Throws InvalidOrder when derived is not coarser-or-equal,
// NonIntegerRatio when r is fractional.
std::uint64_t sheets_per_derived(MapScale source, MapScale derived);

// Radical law of selection: round_half_up(constant * n * sqrt(source_den /
// derived_den)), never negative. With constant = 1 the result never
// exceeds n_source. Throws InvalidOrder when derived is finer than source.
std::int64_t topfer_select_count(std::int64_t n_source, MapScale source, MapScale derived,
                                 double constant = 1.0);

// The single reduced ratio of consecutive scales in a series sorted by
// ascending denominator. Requires >= 2 scales (EmptySeries), strictly
// ascending denominators (InvalidOrder), one constant ratio
// (NonConstantRatio) whose reciprocal is an integer (NonIntegerRatio).
ScalingRatio series_scaling_ratio(std::span<const MapScale> scales);

}  // namespace fractmap
