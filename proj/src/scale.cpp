#include "fractmap/scale.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fractmap {

namespace {

void require_valid(MapScale scale, const char* which) {
  if (scale.denominator < 1) {
    throw NonPositiveValue(std::string(which) + " scale denominator must be >= 1");
  }
}

}  // namespace

std::int64_t round_half_up(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

std::uint64_t sheets_per_derived(MapScale source, MapScale derived) {
  require_valid(source, "source");
  require_valid(derived, "derived");
  if (derived.denominator < source.denominator) {
    throw InvalidOrder("derived scale must be coarser than or equal to the source scale");
  }
  if (derived.denominator % source.denominator != 0) {
    throw NonIntegerRatio("scale ratio " + std::to_string(derived.denominator) + "/" +
                          std::to_string(source.denominator) + " is not an integer");
  }
  const std::uint64_t r = derived.denominator / source.denominator;
  return r * r;
}

std::int64_t topfer_select_count(std::int64_t n_source, MapScale source, MapScale derived,
                                 double constant) {
  require_valid(source, "source");
  require_valid(derived, "derived");
  if (n_source < 0) throw NonPositiveValue("object count must be >= 0");
  if (!std::isfinite(constant) || constant <= 0.0) {
    throw NonPositiveValue("selection constant must be finite and > 0");
  }
  if (derived.denominator < source.denominator) {
    throw InvalidOrder("derived scale must be coarser than or equal to the source scale");
  }
  const double ratio = static_cast<double>(source.denominator) /
                       static_cast<double>(derived.denominator);
  const std::int64_t n = round_half_up(constant * static_cast<double>(n_source) *
                                       std::sqrt(ratio));
  return n < 0 ? 0 : n;
}

ScalingRatio series_scaling_ratio(std::span<const MapScale> scales) {
  if (scales.size() < 2) throw EmptySeries("a map series needs at least two scales");
  for (const MapScale& s : scales) require_valid(s, "series");

  ScalingRatio ratio{0, 0};
  for (std::size_t i = 1; i < scales.size(); ++i) {
    const std::uint64_t a = scales[i - 1].denominator;
    const std::uint64_t b = scales[i].denominator;
    if (b <= a) throw InvalidOrder("series scales must have strictly ascending denominators");
    const std::uint64_t g = std::gcd(a, b);
    const ScalingRatio pair{a / g, b / g};
    if (i == 1) {
      ratio = pair;
    } else if (pair != ratio) {
      throw NonConstantRatio("consecutive scale ratios differ across the series");
    }
  }
  if (ratio.numerator != 1) {
    throw NonIntegerRatio("series ratio " + std::to_string(ratio.numerator) + "/" +
                          std::to_string(ratio.denominator) +
                          " has a non-integer reciprocal");
  }
  return ratio;
}

}  // namespace fractmap
