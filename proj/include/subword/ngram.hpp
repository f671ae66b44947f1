#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "subword/core.hpp"

namespace subword {

// Character n-gram segmentation baseline. Words on the shortlist (the k most
// frequent types, boundary ties broken lexicographically) stay unsegmented.
struct NgramConfig {
  std::uint32_t n = 1;
  std::set<std::string> shortlist;
  // Default: end-of-word marker attached to the final chunk. The detached
  // mode matches the learner's internal representation for comparisons.
  bool detached_eow = false;
};

std::set<std::string> make_shortlist(const WordFrequencyTable& table, std::uint32_t k);

NgramConfig make_ngram_config(std::uint32_t n, std::uint32_t shortlist_size,
                              const WordFrequencyTable* table = nullptr);

// Consecutive chunks of n scalars, left to right; the final chunk keeps the
// 1..n-scalar remainder and carries the end-of-word marker.
SymbolSequence segment_ngrams(std::string_view word, const NgramConfig& cfg);

SegmentedText segment_corpus_ngrams(const std::vector<std::string>& lines, const NgramConfig& cfg);

}  // namespace subword
