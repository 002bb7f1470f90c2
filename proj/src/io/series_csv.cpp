#include "fractmap/io/series_csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "fractmap/io/format.hpp"

namespace fractmap::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string write_series_csv(const htb::ValueSeries& series) {
  htb::validate_series(series);
  std::string out = "value\n";
  for (double v : series) {
    out += format_number(v);
    out += '\n';
  }
  return out;
}

htb::ValueSeries read_series_csv(std::string_view text) {
  htb::ValueSeries series;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view cell = trim(text.substr(pos, end - pos));
    if (!cell.empty() && !(line_number == 1 && cell == "value")) {
      double value = 0.0;
      auto [rest, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || rest != cell.data() + cell.size()) {
        throw ParseError("line is not a number: \"" + std::string(cell) + "\"",
                         line_number, 1);
      }
      if (!std::isfinite(value) || value <= 0.0) {
        throw NonPositiveValue("series values must be finite and positive (line " +
                               std::to_string(line_number) + ")");
      }
      series.push_back(value);
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (series.empty()) throw EmptySeries("no values in input");
  return series;
}

std::string write_measurement_csv(const dimension::MeasurementTable& table) {
  std::string out = "yardstick,count,length\n";
  for (const dimension::MeasurementRow& row : table.rows) {
    out += format_number(row.yardstick);
    out += ',';
    out += format_number(row.count);
    out += ',';
    out += format_number(row.length);
    out += '\n';
  }
  return out;
}

}  // namespace fractmap::io
