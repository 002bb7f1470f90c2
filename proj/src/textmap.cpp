#include "fractmap/textmap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

namespace fractmap::textmap {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Non-ASCII bytes count as word characters so multi-byte letters are
// never stripped.
bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

std::string fold_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && !is_word_char(raw[begin])) ++begin;
  while (end > begin && !is_word_char(raw[end - 1])) --end;
  std::string token;
  token.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    token.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i]))));
  }
  return token;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) {
      std::string token = fold_token(text.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

FrequencyTable word_frequencies(std::span<const std::string> tokens) {
  std::map<std::string_view, std::size_t> first_seen;
  std::vector<FrequencyRow> rows;
  for (const std::string& token : tokens) {
    auto [it, inserted] = first_seen.try_emplace(token, rows.size());
    if (inserted) {
      rows.push_back({token, 1, 0});
    } else {
      ++rows[it->second].frequency;
    }
  }
  // Sort by descending frequency; equal frequencies keep first-appearance
  // order, which stable_sort preserves from the rows' build order.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FrequencyRow& a, const FrequencyRow& b) {
                     return a.frequency > b.frequency;
                   });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rank = static_cast<int>(i) + 1;
  }
  return {std::move(rows)};
}

WordLevelTable word_levels(const FrequencyTable& table, const htb::HtbParams& params,
                           double base_size, double growth) {
  if (table.rows.empty()) throw EmptySeries("frequency table is empty");
  if (!std::isfinite(base_size) || base_size <= 0.0 || !std::isfinite(growth) ||
      growth <= 0.0) {
    throw NonPositiveValue("display size parameters must be finite and positive");
  }
  htb::ValueSeries frequencies;
  frequencies.reserve(table.rows.size());
  for (const FrequencyRow& row : table.rows) {
    frequencies.push_back(static_cast<double>(row.frequency));
  }
  htb::HtbResult classes = htb::head_tail_breaks(frequencies, params);

  WordLevelTable out;
  out.ht_index = classes.ht_index;
  out.rows.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    WordLevel row;
    row.token = table.rows[i].token;
    row.frequency = table.rows[i].frequency;
    row.level = classes.assignments[i];
    row.display_size = base_size * std::pow(growth, row.level - 1);
    out.rows.push_back(std::move(row));
  }
  return out;
}

StructureProfile structure_profile(std::string_view text,
                                   std::string_view section_marker) {
  StructureProfile profile;
  profile.words = tokenize(text).size();

  if (!section_marker.empty()) {
    std::size_t pos = 0;
    while ((pos = text.find(section_marker, pos)) != std::string_view::npos) {
      ++profile.sections;
      pos += section_marker.size();
    }
  }

  // Paragraphs: maximal runs of lines holding any non-whitespace.
  // Sentences: . ! ? delimited chunks of a paragraph with any
  // non-whitespace content.
  std::size_t line_start = 0;
  bool in_paragraph = false;
  std::string paragraph;
  auto flush_paragraph = [&]() {
    if (!in_paragraph) return;
    ++profile.paragraphs;
    bool chunk_has_content = false;
    for (char c : paragraph) {
      if (c == '.' || c == '!' || c == '?') {
        if (chunk_has_content) ++profile.sentences;
        chunk_has_content = false;
      } else if (!is_space(c)) {
        chunk_has_content = true;
      }
    }
    if (chunk_has_content) ++profile.sentences;
    paragraph.clear();
    in_paragraph = false;
  };
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    bool blank = std::all_of(line.begin(), line.end(), is_space);
    if (blank) {
      flush_paragraph();
    } else {
      in_paragraph = true;
      paragraph.append(line);
      paragraph.push_back('\n');
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  flush_paragraph();
  return profile;
}

}  // namespace fractmap::textmap
