#include "subword/joint.hpp"

#include <set>

#include "subword/unicode.hpp"

namespace subword {

namespace {

WordFrequencyTable sum_tables(const WordFrequencyTable& a, const WordFrequencyTable& b) {
  WordFrequencyTable out = a;
  for (const auto& [word, count] : b.entries)
    out.entries[word] += count;
  return out;
}

}  // namespace

JointLearnResult learn_joint(const WordFrequencyTable& source, const WordFrequencyTable& target,
                             const LearnConfig& cfg, Bridge bridge,
                             const TransliterationTable& translit) {
  if (source.empty() || target.empty())
    throw std::invalid_argument("joint learning needs two non-empty word tables");

  JointLearnResult result;
  if (bridge == Bridge::None) {
    const LearnResult learned = learn_bpe_indexed(sum_tables(source, target), cfg);
    result.source = learned.table;
    result.target = learned.table;
    return result;
  }

  WordFrequencyTable bridged_target;
  for (const auto& [word, count] : target.entries)
    bridged_target.add(translit.to_latin(word), count);

  const LearnResult learned = learn_bpe_indexed(sum_tables(source, bridged_target), cfg);
  result.source = learned.table;

  MergeTranslitResult back =
      transliterate_merge_table(learned.table, TranslitDirection::LatinToCyrillic, translit);
  result.dropped = std::move(back.dropped);

  // One priority space: at each original rank the back-transliterated rule
  // precedes the Latin one. A Cyrillic pair and its Latin twin can never
  // both match the same adjacency, so only the cross-rank order matters.
  std::size_t back_i = 0;
  for (std::size_t rank = 0; rank < learned.table.rules.size(); ++rank) {
    const MergeRule& latin = learned.table.rules[rank];
    bool was_dropped = false;
    for (const auto& dropped : result.dropped) {
      if (dropped == latin) {
        was_dropped = true;
        break;
      }
    }
    if (!was_dropped) {
      const MergeRule& cyr = back.table.rules[back_i++];
      if (cyr != latin)
        result.target.rules.push_back(cyr);
    }
    result.target.rules.push_back(latin);
  }
  return result;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Pieces of each token of a segmented line, join markers stripped.
std::vector<std::vector<std::string>> group_tokens(const SegmentedLine& units) {
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::string> current;
  for (const auto& unit : units) {
    if (ends_with(unit, kJoinMarker)) {
      current.emplace_back(unit.substr(0, unit.size() - kJoinMarker.size()));
    } else {
      current.emplace_back(unit);
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty())
    throw FormatError("malformed segmentation: line ends with an open '@@' unit");
  return tokens;
}

// Interior split points as scalar offsets, e.g. [lo, we, r] -> {2, 4}.
std::set<std::size_t> split_offsets(const std::vector<std::string>& pieces) {
  std::set<std::size_t> offsets;
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    offset += unicode::scalar_count(pieces[i]);
    offsets.insert(offset);
  }
  return offsets;
}

}  // namespace

ConsistencyReport segmentation_consistency_report(
    const SegmentedText& source, const SegmentedText& target,
    const std::vector<std::vector<AlignedPair>>& alignments,
    const TransliterationTable& translit) {
  if (source.size() != target.size() || alignments.size() != source.size())
    throw FormatError("consistency report needs equal line counts for source, target and alignment");

  ConsistencyReport report;
  for (std::size_t line = 0; line < source.size(); ++line) {
    const auto src_tokens = group_tokens(source[line]);
    const auto tgt_tokens = group_tokens(target[line]);
    for (const auto& pair : alignments[line]) {
      if (pair.src_token >= src_tokens.size() || pair.tgt_token >= tgt_tokens.size())
        throw FormatError("alignment index out of range on line " + std::to_string(line + 1));
      std::vector<std::string> tgt_latin;
      tgt_latin.reserve(tgt_tokens[pair.tgt_token].size());
      for (const auto& piece : tgt_tokens[pair.tgt_token])
        tgt_latin.push_back(translit.to_latin(piece));
      ++report.pairs;
      if (split_offsets(src_tokens[pair.src_token]) == split_offsets(tgt_latin))
        ++report.consistent;
    }
  }
  return report;
}

}  // namespace subword
