#pragma once

#include <string>
#include <string_view>

#include "fractmap/dimension.hpp"
#include "fractmap/htb.hpp"

namespace fractmap::io {

// One value per line under a "value" header, 17 significant digits,
// trailing newline.
std::string write_series_csv(const htb::ValueSeries& series);

// Accepts the header as optional; blank lines are ignored. Throws
// ParseError (with the offending 1-based line) for non-numeric content,
// NonPositiveValue for values outside (0, inf).
htb::ValueSeries read_series_csv(std::string_view text);

// Header "yardstick,count,length", one measurement per line.
std::string write_measurement_csv(const dimension::MeasurementTable& table);

}  // namespace fractmap::io
