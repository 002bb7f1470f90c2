#include "fractmap/io/feature_json.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "fractmap/io/format.hpp"
#include "json.hpp"

namespace fractmap::io {

namespace {

constexpr const char* kVersion = "1";

const char* geometry_kind(const Geometry& geometry) {
  if (std::holds_alternative<Point>(geometry)) return "point";
  return std::get<Polyline>(geometry).closed() ? "polygon" : "polyline";
}

void append_pair(std::string& out, const Point& p) {
  out += '[';
  out += format_number(p.x);
  out += ',';
  out += format_number(p.y);
  out += ']';
}

// 1-based line/column of a byte offset reported by the JSON parser.
std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& message) {
  throw ParseError(message, 0, 0);
}

double require_finite_number(const nlohmann::json& node, const char* what) {
  if (!node.is_number()) schema_error(std::string(what) + " must be a number");
  double value = node.get<double>();
  if (!std::isfinite(value)) schema_error(std::string(what) + " must be finite");
  return value;
}

}  // namespace

std::string serialize_features(const FeatureSet& set, bool pretty) {
  const char* nl = pretty ? "\n" : "";
  std::string pad1 = pretty ? "  " : "";
  std::string pad2 = pretty ? "    " : "";
  std::string out = "{";
  out += nl;
  out += pad1;
  out += "\"version\":\"";
  out += kVersion;
  out += "\",";
  out += nl;
  out += pad1;
  out += "\"features\":[";
  for (std::size_t i = 0; i < set.features.size(); ++i) {
    const Feature& f = set.features[i];
    validate_measure(f.measure);
    if (i > 0) out += ',';
    out += nl;
    out += pad2;
    out += "{\"geometry_kind\":\"";
    out += geometry_kind(f.geometry);
    out += "\",\"coordinates\":[";
    if (const Point* p = std::get_if<Point>(&f.geometry)) {
      append_pair(out, *p);
    } else {
      const Polyline& line = std::get<Polyline>(f.geometry);
      validate_polyline(line);
      for (std::size_t v = 0; v < line.vertices.size(); ++v) {
        if (v > 0) out += ',';
        append_pair(out, line.vertices[v]);
      }
    }
    out += "],\"measure\":";
    out += format_number(f.measure);
    out += ",\"attributes\":{";
    bool first = true;
    for (const auto& [key, value] : f.attributes) {
      if (!first) out += ',';
      first = false;
      out += '"';
      out += escape_json(key);
      out += "\":\"";
      out += escape_json(value);
      out += '"';
    }
    out += "}}";
  }
  if (!set.features.empty()) {
    out += nl;
    out += pad1;
  }
  out += "]";
  out += nl;
  out += "}";
  out += nl;
  return out;
}

FeatureSet parse_features(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("malformed JSON: ") + e.what(), line, column);
  }
  if (!doc.is_object()) schema_error("document root must be an object");
  if (!doc.contains("version") || !doc["version"].is_string()) {
    schema_error("missing version tag");
  }
  if (doc["version"].get<std::string>() != kVersion) {
    throw UnsupportedVersion("unsupported document version \"" +
                             doc["version"].get<std::string>() + "\"");
  }
  if (!doc.contains("features") || !doc["features"].is_array()) {
    schema_error("missing features array");
  }

  FeatureSet set;
  for (const nlohmann::json& node : doc["features"]) {
    if (!node.is_object()) schema_error("feature must be an object");
    if (!node.contains("geometry_kind") || !node["geometry_kind"].is_string()) {
      schema_error("feature missing geometry_kind");
    }
    std::string kind = node["geometry_kind"].get<std::string>();
    if (!node.contains("coordinates") || !node["coordinates"].is_array()) {
      schema_error("feature missing coordinates");
    }
    std::vector<Point> points;
    for (const nlohmann::json& pair : node["coordinates"]) {
      if (!pair.is_array() || pair.size() != 2) {
        schema_error("coordinates must be [x,y] pairs");
      }
      points.push_back({require_finite_number(pair[0], "coordinate"),
                        require_finite_number(pair[1], "coordinate")});
    }

    Feature f;
    if (kind == "point") {
      if (points.size() != 1) schema_error("point features take exactly one pair");
      f.geometry = points.front();
    } else if (kind == "polyline" || kind == "polygon") {
      Polyline line{std::move(points)};
      try {
        validate_polyline(line);
      } catch (const Error& e) {
        schema_error(e.what());
      }
      if (kind == "polygon" && !line.closed()) {
        schema_error("polygon ring must close (first pair == last pair)");
      }
      if (kind == "polyline" && line.closed()) {
        schema_error("closed ring must use geometry_kind polygon");
      }
      f.geometry = std::move(line);
    } else {
      schema_error("unknown geometry_kind \"" + kind + "\"");
    }

    if (!node.contains("measure")) schema_error("feature missing measure");
    double measure = require_finite_number(node["measure"], "measure");
    if (measure <= 0.0) schema_error("measure must be positive");
    f.measure = measure;

    if (node.contains("attributes")) {
      if (!node["attributes"].is_object()) {
        schema_error("attributes must be an object");
      }
      for (const auto& [key, value] : node["attributes"].items()) {
        if (!value.is_string()) schema_error("attribute values must be strings");
        f.attributes[key] = value.get<std::string>();
      }
    }
    set.features.push_back(std::move(f));
  }
  return set;
}

}  // namespace fractmap::io
