#include "subword/formats.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "subword/unicode.hpp"

namespace subword {

namespace {

std::string location(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no);
}

std::uint64_t parse_count(std::string_view text, std::string_view source, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw FormatError(location(source, line_no) + ": expected a positive count, got '" +
                      std::string(text) + "'");
  return value;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line))
    return false;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  return true;
}

}  // namespace

void write_merge_table(const MergeTable& table, std::ostream& out) {
  out << "#bpe v1 merges=" << table.rules.size() << " eow=" << kEow << "\n";
  for (const auto& rule : table.rules)
    out << rule.left << " " << rule.right << "\n";
}

MergeTable read_merge_table(std::istream& in, std::string_view source) {
  std::string line;
  if (!next_line(in, line))
    throw FormatError(location(source, 1) + ": empty merge file");
  const std::string expected_prefix = "#bpe v1 merges=";
  if (line.rfind(expected_prefix, 0) != 0)
    throw FormatError(location(source, 1) + ": missing '#bpe v1' header");
  const std::size_t eow_at = line.find(" eow=");
  if (eow_at == std::string::npos)
    throw FormatError(location(source, 1) + ": header lacks the eow field");
  const std::uint64_t declared = [&] {
    const std::string_view digits =
        std::string_view(line).substr(expected_prefix.size(), eow_at - expected_prefix.size());
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw FormatError(location(source, 1) + ": malformed merge count in header");
    return value;
  }();
  if (line.substr(eow_at + 5) != kEow)
    throw FormatError(location(source, 1) + ": unsupported end-of-word marker '" +
                      line.substr(eow_at + 5) + "'");

  MergeTable table;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty())
      throw FormatError(location(source, line_no) + ": empty rule line");
    if (!unicode::is_valid_utf8(line))
      throw FormatError(location(source, line_no) + ": invalid UTF-8 byte sequence");
    const std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string::npos)
      throw FormatError(location(source, line_no) +
                        ": expected 'left right', got '" + line + "'");
    table.rules.push_back({line.substr(0, space), line.substr(space + 1)});
  }
  if (table.rules.size() != declared)
    throw FormatError(std::string(source) + ": header declares " + std::to_string(declared) +
                      " merges but file contains " + std::to_string(table.rules.size()));
  return table;
}

namespace {

template <typename Map>
std::vector<typename Map::const_iterator> by_descending_count(const Map& counts) {
  std::vector<typename Map::const_iterator> order;
  order.reserve(counts.size());
  for (auto it = counts.begin(); it != counts.end(); ++it)
    order.push_back(it);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a->second != b->second)
      return a->second > b->second;
    return a->first < b->first;
  });
  return order;
}

}  // namespace

void write_word_frequency_table(const WordFrequencyTable& table, std::ostream& out) {
  for (const auto& it : by_descending_count(table.entries))
    out << it->first << " " << it->second << "\n";
}

WordFrequencyTable read_word_frequency_table(std::istream& in, std::string_view source) {
  WordFrequencyTable table;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    if (!unicode::is_valid_utf8(line))
      throw FormatError(location(source, line_no) + ": invalid UTF-8 byte sequence");
    const std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || line.find(' ', space + 1) != std::string::npos)
      throw FormatError(location(source, line_no) + ": expected 'word count', got '" + line + "'");
    table.add(line.substr(0, space), parse_count(std::string_view(line).substr(space + 1), source, line_no));
  }
  return table;
}

void write_symbol_counts(const std::map<std::string, std::uint64_t>& counts, std::ostream& out) {
  for (const auto& it : by_descending_count(counts))
    out << it->first << " " << it->second << "\n";
}

std::map<std::string, std::uint64_t> read_symbol_counts(std::istream& in, std::string_view source) {
  std::map<std::string, std::uint64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    if (!unicode::is_valid_utf8(line))
      throw FormatError(location(source, line_no) + ": invalid UTF-8 byte sequence");
    const std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || line.find(' ', space + 1) != std::string::npos)
      throw FormatError(location(source, line_no) + ": expected 'symbol count', got '" + line + "'");
    counts[line.substr(0, space)] += parse_count(std::string_view(line).substr(space + 1), source, line_no);
  }
  return counts;
}

}  // namespace subword
