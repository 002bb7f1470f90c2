#pragma once

#include <string>
#include <string_view>

#include "fractmap/geometry.hpp"

namespace fractmap::io {

// Feature document, version "1":
//   {"version":"1","features":[{"geometry_kind":"point"|"polyline"|"polygon",
//    "coordinates":[[x,y],...],"measure":m,"attributes":{"k":"v",...}}]}
// Numbers carry 17 significant digits, so parse(serialize(x)) == x
// bit-exactly. Polygons list their closing vertex explicitly
// (first pair == last pair).
std::string serialize_features(const FeatureSet& set, bool pretty = false);

// Throws ParseError with 1-based line/column for malformed JSON, line 0
// for structurally valid JSON violating the schema; UnsupportedVersion
// for unknown version tags.
FeatureSet parse_features(std::string_view text);

}  // namespace fractmap::io
