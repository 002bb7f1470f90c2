#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractmap/htb.hpp"

namespace fractmap::textmap {

struct FrequencyRow {
  std::string token;
  std::int64_t frequency = 0;
  int rank = 0;
};

// Distinct tokens ranked 1.. by descending frequency; ties keep first
// appearance order.
struct FrequencyTable {
  std::vector<FrequencyRow> rows;
};

// Lowercase, whitespace-split tokens with leading/trailing punctuation
// stripped (interior punctuation kept: "head/tail" stays one token).
// Bytes outside ASCII are treated as word characters, so UTF-8 words
// survive untouched. No stemming, no stop-word removal.
std::vector<std::string> tokenize(std::string_view text);

FrequencyTable word_frequencies(std::span<const std::string> tokens);

struct WordLevel {
  std::string token;
  std::int64_t frequency = 0;
  int level = 1;
  double display_size = 0.0;
};

// Frequency classification for cloud rendering: head/tail-breaks levels
// over the frequencies, display size growing geometrically with level.
struct WordLevelTable {
  std::vector<WordLevel> rows;  // in frequency-rank order
  int ht_index = 1;
};

WordLevelTable word_levels(const FrequencyTable& table,
                           const htb::HtbParams& params = {},
                           double base_size = 10.0, double growth = 1.8);

struct StructureProfile {
  std::size_t sections = 0;
  std::size_t paragraphs = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
};

// Structural counts: paragraphs are blank-line-separated blocks,
// sentences are . ! ? delimited chunks containing any non-whitespace,
// words are tokenize() results, sections are non-overlapping occurrences
// of section_marker (0 when the marker is empty).
StructureProfile structure_profile(std::string_view text,
                                   std::string_view section_marker = "");

}  // namespace fractmap::textmap
