#include "subword/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "subword/bpe_apply.hpp"
#include "subword/ngram.hpp"

namespace subword {

namespace {

SegmentedText identity_segmentation(const std::vector<std::string>& lines) {
  SegmentedText out;
  out.reserve(lines.size());
  for (const auto& line : lines)
    out.push_back(split_tokens(line));
  return out;
}

SegmentedText segment_with(const Scheme& scheme, const std::vector<std::string>& lines,
                           const WordFrequencyTable& train_table) {
  switch (scheme.kind) {
    case Scheme::Kind::None:
      return identity_segmentation(lines);
    case Scheme::Kind::CharNgram: {
      const NgramConfig cfg = make_ngram_config(scheme.n, scheme.shortlist_size, &train_table);
      return segment_corpus_ngrams(lines, cfg);
    }
    case Scheme::Kind::Bpe:
      return apply_to_corpus(lines, scheme.merges).text;
    case Scheme::Kind::PreSegmented:
      break;  // handled by the caller
  }
  throw std::logic_error("unhandled scheme kind");
}

}  // namespace

std::vector<SchemeResult> compare_schemes(const std::vector<std::string>& train,
                                          const std::vector<std::string>& test,
                                          const std::vector<Scheme>& schemes) {
  const WordFrequencyTable train_table = build_word_frequency_table(train);
  std::vector<SchemeResult> results;
  results.reserve(schemes.size());
  for (const auto& scheme : schemes) {
    SegmentedText seg_train, seg_test;
    if (scheme.kind == Scheme::Kind::PreSegmented) {
      seg_train = identity_segmentation(scheme.train_lines);
      seg_test = identity_segmentation(scheme.test_lines);
    } else {
      seg_train = segment_with(scheme, train, train_table);
      seg_test = segment_with(scheme, test, train_table);
    }
    results.push_back({scheme.name, corpus_statistics(seg_train, seg_test)});
  }
  return results;
}

std::string format_scheme_table(const std::vector<SchemeResult>& rows, bool tab_separated) {
  std::ostringstream out;
  if (tab_separated) {
    out << "segmentation\ttokens\ttypes\tunk\n";
    for (const auto& row : rows)
      out << row.name << "\t" << row.stats.tokens << "\t" << row.stats.types << "\t"
          << row.stats.unknown << "\n";
    return out.str();
  }
  std::size_t name_width = 12;
  for (const auto& row : rows)
    name_width = std::max(name_width, row.name.size());
  out << std::left << std::setw(static_cast<int>(name_width + 2)) << "segmentation"
      << std::right << std::setw(12) << "#tokens" << std::setw(12) << "#types"
      << std::setw(8) << "#UNK" << "\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(name_width + 2)) << row.name
        << std::right << std::setw(12) << row.stats.tokens << std::setw(12) << row.stats.types
        << std::setw(8) << row.stats.unknown << "\n";
  }
  return out.str();
}

}  // namespace subword
