#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subword/core.hpp"

namespace subword {

// Subword symbols retained as model inputs/outputs, with their training
// counts. Symbols are stored in internal form (end-of-word marker attached
// to word-final symbols).
struct SymbolVocabulary {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t threshold = 0;

  bool contains(std::string_view symbol) const {
    auto it = counts.find(std::string(symbol));
    return it != counts.end() && it->second >= threshold;
  }
};

// Counts every symbol occurrence of a segmented corpus and drops symbols
// below the threshold.
SymbolVocabulary build_network_vocabulary(const SegmentedText& corpus, std::uint64_t threshold);

// Internal symbol spelled by a written unit: "low@@" -> "low",
// final "er" -> "er</w>".
std::string unit_to_symbol(std::string_view unit, bool word_final);

struct UnknownReport {
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t total() const;
  bool empty() const { return counts.empty(); }
};

struct ApplyResult {
  SegmentedText text;
  UnknownReport unknown;
};

// Applies a learned merge table to words at test time.
class BpeApplier {
 public:
  explicit BpeApplier(MergeTable table);

  // Greedy application in learned priority order: repeatedly merge all
  // left-to-right occurrences of the applicable rule of minimum rank. For
  // any word of the learning dictionary this reproduces the word's final
  // training-time segmentation; unknown characters pass through.
  SymbolSequence apply_merges(std::string_view word) const;

  // Recursively reverses merges on an out-of-vocabulary symbol until every
  // piece is in the vocabulary or irreducible. Irreducible pieces outside
  // the vocabulary are recorded in `unknown` when given. Concatenating the
  // result always reproduces the input symbol.
  SymbolSequence split_to_known(const std::string& symbol, const SymbolVocabulary& vocab,
                                std::map<std::string, std::uint64_t>* unknown = nullptr) const;

  const MergeTable& table() const { return table_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::string, std::string>& p) const {
      const std::size_t h1 = std::hash<std::string>()(p.first);
      const std::size_t h2 = std::hash<std::string>()(p.second);
      return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
  };

  MergeTable table_;
  std::unordered_map<std::pair<std::string, std::string>, std::uint32_t, PairHash> rank_;
  // symbol -> highest-rank rule producing it, for merge reversal.
  std::unordered_map<std::string, std::uint32_t> derivation_;
};

// Per-word application over tokenized lines, with memoized word results.
// When a vocabulary is given, out-of-vocabulary symbols are split back into
// known pieces and residual unknowns are reported with occurrence counts.
ApplyResult apply_to_corpus(const std::vector<std::string>& lines, const MergeTable& table,
                            const SymbolVocabulary* vocab = nullptr);

}  // namespace subword
