#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fractmap/fractal.hpp"
#include "fractmap/geometry.hpp"
#include "fractmap/io/feature_json.hpp"
#include "fractmap/io/format.hpp"
#include "fractmap/io/series_csv.hpp"
#include "fractmap/rng.hpp"

using namespace fractmap;

namespace {

std::string golden_path(const std::string& name) {
  return std::string(FRACTMAP_TEST_DIR) + "/goldens/" + name;
}

// Compares content against the stored golden file; regenerate the files
// by running with FRACTMAP_UPDATE_GOLDEN=1 and reviewing the diff.
void compare_or_update_golden(const std::string& name,
                              const std::string& content) {
  const std::string path = golden_path(name);
  if (std::getenv("FRACTMAP_UPDATE_GOLDEN") != nullptr) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file ", path,
                  " (set FRACTMAP_UPDATE_GOLDEN=1 to create)");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == content);
}

FeatureSet mixed_sample() {
  FeatureSet set;
  set.features.push_back({Point{0.25, -1.5}, 2.0, {{"name", "anchor"}}});
  set.features.push_back(
      {Polyline{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}}, 1.5, {}});
  set.features.push_back(
      {Polyline{{{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}, {0.0, 0.0}}},
       4.0,
       {{"role", "frame"}, {"note", "a \"quoted\" label"}}});
  return set;
}

}  // namespace

TEST_CASE("empty set serializes to the minimal document") {
  CHECK(io::serialize_features(FeatureSet{}) ==
        "{\"version\":\"1\",\"features\":[]}");
  FeatureSet parsed = io::parse_features("{\"version\":\"1\",\"features\":[]}");
  CHECK(parsed.empty());
}

TEST_CASE("serialize then parse is the identity") {
  FeatureSet original = mixed_sample();
  FeatureSet parsed = io::parse_features(io::serialize_features(original));
  CHECK(parsed == original);
}

TEST_CASE("generated geometry survives the round trip bit-exactly") {
  FeatureSet koch = fractal::koch_curve(2).base();
  CHECK(io::parse_features(io::serialize_features(koch)) == koch);

  FeatureSet carpet = fractal::sierpinski_carpet(1).base();
  CHECK(io::parse_features(io::serialize_features(carpet)) == carpet);

  FeatureSet cities = fractal::zipf_cities(40, 9);
  CHECK(io::parse_features(io::serialize_features(cities)) == cities);
}

TEST_CASE("awkward doubles survive the round trip") {
  SplitMix64 rng(2024);
  FeatureSet set;
  std::vector<double> picks{3.141592653589793, 1.0 / 3.0, 1e-12,
                            12345678901234567.0, 5e-324};
  for (double v : picks) {
    set.features.push_back({Point{v, -v}, v > 0 ? v : 1.0, {}});
  }
  for (int i = 0; i < 100; ++i) {
    double x = (rng.next_unit() - 0.5) * 1e6;
    double y = (rng.next_unit() - 0.5) * 1e-6;
    set.features.push_back({Point{x, y}, rng.next_unit() + 1e-9, {}});
  }
  CHECK(io::parse_features(io::serialize_features(set)) == set);
}

TEST_CASE("pretty output parses to the same set") {
  FeatureSet original = mixed_sample();
  std::string pretty = io::serialize_features(original, true);
  CHECK(pretty.find('\n') != std::string::npos);
  CHECK(io::parse_features(pretty) == original);
}

TEST_CASE("closed rings round-trip as polygons") {
  FeatureSet original = mixed_sample();
  std::string text = io::serialize_features(original);
  CHECK(text.find("\"geometry_kind\":\"polygon\"") != std::string::npos);
  CHECK(text.find("\"geometry_kind\":\"polyline\"") != std::string::npos);
  CHECK(text.find("\"geometry_kind\":\"point\"") != std::string::npos);
  FeatureSet parsed = io::parse_features(text);
  CHECK(std::get<Polyline>(parsed.features[2].geometry).closed());
}

TEST_CASE("malformed JSON reports a position") {
  try {
    io::parse_features("this is not json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.column >= 1);
  }
  try {
    io::parse_features("{\"version\":\"1\",\n\"features\":[}\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 2);  // the parser got past the first line
  }
}

TEST_CASE("schema violations report line zero") {
  auto expect_schema_error = [](const std::string& text) {
    try {
      io::parse_features(text);
      FAIL_CHECK("expected ParseError for ", text);
    } catch (const ParseError& e) {
      CHECK(e.line == 0);
    }
  };
  expect_schema_error("[]");
  expect_schema_error("{\"features\":[]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"point\","
      "\"coordinates\":[[0,0]],\"measure\":-1,\"attributes\":{}}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"point\","
      "\"coordinates\":[[0,0],[1,1]],\"measure\":1}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"polygon\","
      "\"coordinates\":[[0,0],[1,0],[1,1]],\"measure\":1}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"polyline\","
      "\"coordinates\":[[0,0],[1,0],[1,1],[0,0]],\"measure\":1}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"spiral\","
      "\"coordinates\":[[0,0]],\"measure\":1}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"point\","
      "\"coordinates\":[[0,0]]}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"point\","
      "\"coordinates\":[[0,0,5]],\"measure\":1}]}");
  expect_schema_error(
      "{\"version\":\"1\",\"features\":[{\"geometry_kind\":\"point\","
      "\"coordinates\":[[0,0]],\"measure\":1,\"attributes\":{\"k\":7}}]}");
}

TEST_CASE("unknown versions are refused") {
  CHECK_THROWS_AS(io::parse_features("{\"version\":\"2\",\"features\":[]}"),
                  UnsupportedVersion);
}

TEST_CASE("series CSV writes header plus one value per line") {
  CHECK(io::write_series_csv({1.0, 0.5}) == "value\n1\n0.5\n");
}

TEST_CASE("series CSV reads with or without the header") {
  htb::ValueSeries with_header = io::read_series_csv("value\n1\n0.5\n");
  CHECK(with_header == htb::ValueSeries{1.0, 0.5});
  htb::ValueSeries without = io::read_series_csv("2\n3\n");
  CHECK(without == htb::ValueSeries{2.0, 3.0});
  htb::ValueSeries gappy = io::read_series_csv("value\n\n1\n\n2\n");
  CHECK(gappy == htb::ValueSeries{1.0, 2.0});
}

TEST_CASE("series CSV round-trips values bit-exactly") {
  SplitMix64 rng(7);
  htb::ValueSeries series;
  for (int i = 0; i < 50; ++i) {
    series.push_back(rng.next_unit() * 1000.0 + 1e-9);
  }
  series.push_back(1.0 / 3.0);
  series.push_back(3.141592653589793);
  CHECK(io::read_series_csv(io::write_series_csv(series)) == series);
}

TEST_CASE("series CSV rejects bad content") {
  try {
    io::read_series_csv("value\nabc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  try {
    io::read_series_csv("abc");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(io::read_series_csv("value\n-3\n"), NonPositiveValue);
  CHECK_THROWS_AS(io::read_series_csv("0\n"), NonPositiveValue);
  CHECK_THROWS_AS(io::read_series_csv("inf\n"), NonPositiveValue);
  CHECK_THROWS_AS(io::read_series_csv(""), EmptySeries);
  CHECK_THROWS_AS(io::read_series_csv("value\n"), EmptySeries);
  CHECK_THROWS_AS(io::read_series_csv("\n\n"), EmptySeries);
}

TEST_CASE("measurement CSV layout is fixed") {
  dimension::MeasurementTable table;
  table.rows.push_back({0.5, 2.0, 1.0});
  table.rows.push_back({0.25, 4.0, 1.0});
  CHECK(io::write_measurement_csv(table) ==
        "yardstick,count,length\n0.5,2,1\n0.25,4,1\n");
}

TEST_CASE("number formatting round-trips and coordinates are fixed-width") {
  CHECK(io::format_number(1.0) == "1");
  CHECK(io::format_number(0.5) == "0.5");
  double pi = 3.141592653589793;
  CHECK(std::stod(io::format_number(pi)) == pi);
  double third = 1.0 / 3.0;
  CHECK(std::stod(io::format_number(third)) == third);
  CHECK(io::format_coord(1.0) == "1.000");
  CHECK(io::format_coord(1.23456) == "1.235");
  CHECK(io::format_coord(-2.5) == "-2.500");
}

TEST_CASE("string escaping for both output formats") {
  CHECK(io::escape_json("a\"b\\c\nd") == "a\\\"b\\\\c\\nd");
  CHECK(io::escape_json(std::string(1, '\x01')) == "\\u0001");
  CHECK(io::escape_xml("<tag> & \"x\" 'y'") ==
        "&lt;tag&gt; &amp; &quot;x&quot; &apos;y&apos;");
}

TEST_CASE("feature document golden file is stable") {
  compare_or_update_golden("features.json",
                           io::serialize_features(mixed_sample(), true));
}
