#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "subword/core.hpp"

namespace subword {

// Merge file, bit-exact:
//   line 1: "#bpe v1 merges=<executed> eow=</w>"
//   then one rule per line, "left<SPACE>right", in rank order.
void write_merge_table(const MergeTable& table, std::ostream& out);
MergeTable read_merge_table(std::istream& in, std::string_view source = "<merges>");

// Word-frequency file: "word<SPACE>count" per line, descending count then
// lexicographic word.
void write_word_frequency_table(const WordFrequencyTable& table, std::ostream& out);
WordFrequencyTable read_word_frequency_table(std::istream& in,
                                             std::string_view source = "<dict>");

// Vocabulary file: "symbol<SPACE>count" per line, descending count then
// lexicographic symbol.
void write_symbol_counts(const std::map<std::string, std::uint64_t>& counts,
                         std::ostream& out);
std::map<std::string, std::uint64_t> read_symbol_counts(std::istream& in,
                                                        std::string_view source = "<vocab>");

}  // namespace subword
