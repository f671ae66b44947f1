#include "subword/core.hpp"

#include "subword/unicode.hpp"

namespace subword {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void WordFrequencyTable::add(std::string_view word, std::uint64_t count) {
  if (word.empty())
    throw std::invalid_argument("empty word in frequency table");
  for (char c : word)
    if (is_space(c))
      throw std::invalid_argument("word contains whitespace: '" + std::string(word) + "'");
  if (count == 0)
    throw std::invalid_argument("zero count for word '" + std::string(word) + "'");
  entries[std::string(word)] += count;
}

std::uint64_t WordFrequencyTable::total_tokens() const {
  std::uint64_t total = 0;
  for (const auto& [word, count] : entries)
    total += count;
  return total;
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i]))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i]))
      ++i;
    if (i > start)
      tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

WordFrequencyTable build_word_frequency_table(std::istream& lines) {
  WordFrequencyTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!unicode::is_valid_utf8(line))
      throw FormatError("line " + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    for (const auto& token : split_tokens(line))
      table.add(token);
  }
  return table;
}

WordFrequencyTable build_word_frequency_table(const std::vector<std::string>& lines) {
  WordFrequencyTable table;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!unicode::is_valid_utf8(lines[i]))
      throw FormatError("line " + std::to_string(i + 1) + ": invalid UTF-8 byte sequence");
    for (const auto& token : split_tokens(lines[i]))
      table.add(token);
  }
  return table;
}

SymbolSequence initial_symbolization(std::string_view word) {
  if (word.empty())
    throw std::invalid_argument("cannot symbolize an empty word");
  SymbolSequence symbols = unicode::split_scalars(word);
  symbols.emplace_back(kEow);
  return symbols;
}

std::string concat_symbols(const SymbolSequence& seq) {
  std::string joined;
  for (const auto& s : seq)
    joined += s;
  if (!ends_with(joined, kEow))
    throw std::invalid_argument("symbol sequence does not end with the end-of-word marker");
  joined.resize(joined.size() - kEow.size());
  return joined;
}

std::vector<std::string> serialize_segmentation(const SymbolSequence& seq) {
  if (seq.empty())
    throw std::invalid_argument("cannot serialize an empty symbol sequence");
  if (!ends_with(seq.back(), kEow))
    throw std::invalid_argument("last symbol lacks the end-of-word marker");

  std::vector<std::string> units;
  units.reserve(seq.size());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    units.push_back(seq[i] + std::string(kJoinMarker));
  std::string last = seq.back();
  last.resize(last.size() - kEow.size());
  if (last.empty()) {
    // Bare trailing "</w>": fold into the preceding unit instead of emitting
    // an empty one.
    if (units.empty())
      throw std::invalid_argument("symbol sequence is a bare end-of-word marker");
    units.back().resize(units.back().size() - kJoinMarker.size());
  } else {
    units.push_back(std::move(last));
  }
  return units;
}

std::string join_units(const SegmentedLine& units) {
  std::string line;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i)
      line += ' ';
    line += units[i];
  }
  return line;
}

SegmentedLine split_units(std::string_view line) {
  return split_tokens(line);
}

std::string revert_line(std::string_view line) {
  const auto units = split_tokens(line);
  std::string out;
  std::string word;
  bool open = false;
  for (const auto& unit : units) {
    if (ends_with(unit, kJoinMarker)) {
      word.append(unit.data(), unit.size() - kJoinMarker.size());
      open = true;
    } else {
      word += unit;
      if (!out.empty())
        out += ' ';
      out += word;
      word.clear();
      open = false;
    }
  }
  if (open)
    throw FormatError("malformed segmentation: line ends with an open '@@' unit");
  return out;
}

std::vector<std::string> revert_segmentation(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const auto& line : lines)
    out.push_back(revert_line(line));
  return out;
}

void check_no_marker(std::string_view token, std::size_t line_no) {
  if (token.find(kJoinMarker) != std::string_view::npos)
    throw FormatError("line " + std::to_string(line_no) + ": token '" + std::string(token) +
                      "' contains the literal join marker '@@'");
}

}  // namespace subword
