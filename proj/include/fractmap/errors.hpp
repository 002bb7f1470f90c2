#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fractmap {

// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- scale arithmetic ---------------------------------------------------

// Derived scale is not coarser than (or equal to) the source scale, or an
// ordered sequence argument is not in the required order.
struct InvalidOrder : Error {
  using Error::Error;
};

// Scale-denominator ratio whose reciprocal must be an integer is not one
// (e.g. 1:100K -> 1:250K gives 2.5 derived sheets per side).
struct NonIntegerRatio : Error {
  using Error::Error;
};

// Consecutive scales of a map series do not share one reduced ratio.
struct NonConstantRatio : Error {
  using Error::Error;
};

// --- geometry -----------------------------------------------------------

// Polyline with fewer than two vertices, repeated consecutive vertices,
// or non-finite coordinates.
struct InvalidGeometry : Error {
  using Error::Error;
};

// --- value series & classification --------------------------------------

struct EmptySeries : Error {
  using Error::Error;
};

// A value that must be strictly positive (and finite) is not.
struct NonPositiveValue : Error {
  using Error::Error;
};

// Requested class count exceeds the number of distinct values.
struct TooManyClasses : Error {
  using Error::Error;
};

// --- fractal generators -------------------------------------------------

// Requested iteration depth exceeds the configured cap.
struct IterationCap : Error {
  using Error::Error;
};

// Apex height outside (0, sqrt(3)/6].
struct InvalidApexHeight : Error {
  using Error::Error;
};

// Result would exceed the representable integer range.
struct Overflow : Error {
  using Error::Error;
};

// --- dimension estimation -----------------------------------------------

// No point of the polyline lies at the yardstick distance from the start.
struct YardstickTooLarge : Error {
  using Error::Error;
};

// Regression input with no spread on the x axis (or fewer than two
// distinct yardsticks).
struct DegenerateFit : Error {
  using Error::Error;
};

struct EmptyGeometry : Error {
  using Error::Error;
};

// --- generalization -----------------------------------------------------

// Map-scale step is not an integer power of the pattern's scaling ratio
// reciprocal; there is no level of detail that matches the target scale.
struct RatioMismatch : Error {
  using Error::Error;
};

// The pattern has fewer construction levels than the scale step requires.
struct InsufficientDepth : Error {
  using Error::Error;
};

struct TooManyLevelsDropped : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

// --- serialization & rendering ------------------------------------------

// Malformed document; line/column are 1-based where known, 0 when the
// error is semantic rather than lexical.
struct ParseError : Error {
  ParseError(std::string message, std::size_t line_no = 0, std::size_t column_no = 0)
      : Error(std::move(message)), line(line_no), column(column_no) {}
  std::size_t line;
  std::size_t column;
};

struct UnsupportedVersion : Error {
  using Error::Error;
};

// Content uses more classification levels than the style defines.
struct StyleLevelMismatch : Error {
  using Error::Error;
};

}  // namespace fractmap
