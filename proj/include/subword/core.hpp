#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subword {

// End-of-word marker appended to every word before learning. Keeping it as a
// separate trailing symbol makes the original tokenization recoverable and
// lets merges decide whether a subword is word-final.
inline constexpr std::string_view kEow = "</w>";

// Suffix on non-final written units in serialized segmented text.
inline constexpr std::string_view kJoinMarker = "@@";

// Malformed input or file content. The CLI maps this to exit code 2.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distinct word -> occurrence count over a tokenized corpus.
// Keys are non-empty and contain no whitespace; counts are >= 1.
struct WordFrequencyTable {
  std::map<std::string, std::uint64_t> entries;

  void add(std::string_view word, std::uint64_t count = 1);
  std::uint64_t total_tokens() const;
  bool empty() const { return entries.empty(); }
};

// A word as an ordered list of subword symbols. Exactly the last symbol ends
// with kEow; concatenating all symbols and stripping that one trailing marker
// reproduces the original word.
using SymbolSequence = std::vector<std::string>;

struct MergeRule {
  std::string left;
  std::string right;

  std::string result() const { return left + right; }
  bool operator==(const MergeRule&) const = default;
};

// Ordered list of merge rules; rank = position = application priority.
struct MergeTable {
  std::vector<MergeRule> rules;

  std::size_t size() const { return rules.size(); }
  bool empty() const { return rules.empty(); }
};

using SegmentedLine = std::vector<std::string>;  // written units
using SegmentedText = std::vector<SegmentedLine>;

// Whitespace-delimited tokens of one line.
std::vector<std::string> split_tokens(std::string_view line);

// Counts every distinct token of the stream. Throws FormatError (naming the
// 1-based line number) on invalid UTF-8.
WordFrequencyTable build_word_frequency_table(std::istream& lines);
WordFrequencyTable build_word_frequency_table(const std::vector<std::string>& lines);

// One symbol per Unicode scalar value plus the detached trailing end-of-word
// symbol, e.g. "low" -> [l, o, w, </w>]. Throws std::invalid_argument on an
// empty word.
SymbolSequence initial_symbolization(std::string_view word);

// Original word spelled by a symbol sequence (concatenation minus the
// trailing end-of-word marker).
std::string concat_symbols(const SymbolSequence& seq);

// Written units for one word: every symbol but the last gets the "@@" join
// marker, the last loses its end-of-word marker. A bare trailing "</w>"
// symbol is folded into the preceding unit so no empty unit is emitted.
std::vector<std::string> serialize_segmentation(const SymbolSequence& seq);

// Inverse of serialization: each maximal run "u1@@ u2@@ ... uk" joins back
// into one token. Throws FormatError if a line ends with an open "@@" unit.
std::string revert_line(std::string_view line);
std::vector<std::string> revert_segmentation(const std::vector<std::string>& lines);

std::string join_units(const SegmentedLine& units);
SegmentedLine split_units(std::string_view line);

// Segmentation inputs that already contain the join marker cannot be
// serialized reversibly and are rejected.
void check_no_marker(std::string_view token, std::size_t line_no);

}  // namespace subword
