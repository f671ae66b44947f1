#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subword/core.hpp"

namespace subword {

struct LearnConfig {
  // Number of merge operations to learn (s). The only real hyperparameter.
  std::uint32_t num_merges = 0;
  // Stop once the best pair's weighted count falls below this. Pairs seen
  // once generalize to nothing, so the default skips them.
  std::uint64_t min_frequency = 2;
  // Ties on the count are always broken lexicographically on (left, right)
  // by Unicode scalar sequence, so learning is deterministic everywhere.
};

struct SymbolizedWord {
  std::string word;
  std::uint64_t freq = 0;
  SymbolSequence symbols;
};

// The learner's working state: every dictionary word as a symbol sequence,
// in lexicographic word order.
using SymbolizedTable = std::vector<SymbolizedWord>;

SymbolizedTable symbolize_table(const WordFrequencyTable& table);

using SymbolPair = std::pair<std::string, std::string>;

// (left, right) -> sum over words of adjacent-occurrence count * word
// frequency. Occurrences are counted at every index, including overlaps.
using PairCounts = std::map<SymbolPair, std::uint64_t>;

PairCounts count_pair_frequencies(const SymbolizedTable& table);

// Replaces every left-to-right non-overlapping adjacent occurrence of the
// pair with the concatenated symbol. Returns the number of occurrences
// replaced (unweighted); 0 means the pair was absent everywhere.
std::size_t merge_pair(const SymbolPair& pair, SymbolizedTable& table);

struct LearnResult {
  MergeTable table;
  // Weighted count of each selected pair at selection time; parallel to the
  // rule list and non-increasing over ranks.
  std::vector<std::uint64_t> selection_counts;
  // Dictionary state after the last merge; apply-time segmentation of any
  // training word must reproduce the entry here.
  SymbolizedTable final_state;
};

// Reference learner: recounts all pairs from scratch on every iteration,
// exactly as the minimal published procedure does.
LearnResult learn_bpe(const WordFrequencyTable& table, const LearnConfig& cfg);

// Fast learner: keeps pair counts and a pair -> containing-words index up to
// date incrementally, touching only the words changed by each merge. Output
// is bit-identical to learn_bpe on every input.
LearnResult learn_bpe_indexed(const WordFrequencyTable& table, const LearnConfig& cfg);

}  // namespace subword
