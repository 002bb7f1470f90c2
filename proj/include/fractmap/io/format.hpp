#pragma once

#include <string>

namespace fractmap::io {

// Shortest-ish decimal form that round-trips a double exactly
// (17 significant digits, %.17g).
std::string format_number(double value);

// Fixed 3-decimal form for SVG coordinates.
std::string format_coord(double value);

// Minimal JSON string escaping (quotes, backslash, control characters).
std::string escape_json(const std::string& text);

// XML text escaping for SVG content (& < > " ').
std::string escape_xml(const std::string& text);

}  // namespace fractmap::io
