#pragma once

#include <cstddef>
#include <vector>

#include "subword/bpe_learn.hpp"
#include "subword/core.hpp"
#include "subword/translit.hpp"

namespace subword {

enum class Bridge {
  None,
  // Target vocabulary is Cyrillic: transliterate it to Latin for joint
  // learning, then hand the target side both the back-transliterated rules
  // and the original Latin ones.
  Iso9,
};

struct JointLearnResult {
  MergeTable source;
  MergeTable target;
  // Bridged rules whose back-transliteration did not round-trip.
  std::vector<MergeRule> dropped;
};

// Learns one encoding on the union of the two vocabularies. Without a bridge
// both sides share the same table; with a bridge the target table interleaves
// each rank's Cyrillic and Latin variants into a single priority space.
JointLearnResult learn_joint(const WordFrequencyTable& source, const WordFrequencyTable& target,
                             const LearnConfig& cfg, Bridge bridge = Bridge::None,
                             const TransliterationTable& translit = TransliterationTable::iso9());

struct AlignedPair {
  std::size_t src_token = 0;
  std::size_t tgt_token = 0;
};

struct ConsistencyReport {
  std::size_t pairs = 0;
  std::size_t consistent = 0;

  double score() const { return pairs == 0 ? 1.0 : static_cast<double>(consistent) / pairs; }
};

// Fraction of aligned cognate token pairs whose split points coincide once
// the target token is transliterated to Latin. Split points are compared as
// scalar offsets. Throws FormatError on mismatched line counts.
ConsistencyReport segmentation_consistency_report(
    const SegmentedText& source, const SegmentedText& target,
    const std::vector<std::vector<AlignedPair>>& alignments,
    const TransliterationTable& translit = TransliterationTable::iso9());

}  // namespace subword
