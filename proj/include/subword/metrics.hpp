#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subword/core.hpp"

namespace subword {

using TokenLine = std::vector<std::string>;
using TokenLines = std::vector<TokenLine>;

struct UnigramStats {
  std::uint64_t match = 0;  // clipped at the reference count, per sentence pair
  std::uint64_t hyp = 0;
  std::uint64_t ref = 0;

  UnigramStats& operator+=(const UnigramStats& other);
};

struct PrecisionRecallF1 {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Clipped unigram counts for one sentence pair.
UnigramStats clipped_unigram_stats(const TokenLine& hyp, const TokenLine& ref);

// Precision = match/hyp, recall = match/ref, F1 = harmonic mean; zero
// numerator gives zero scores, and an entirely empty pair scores 1.
PrecisionRecallF1 scores_from(const UnigramStats& stats);

PrecisionRecallF1 clipped_unigram_scores(const TokenLine& hyp, const TokenLine& ref);

// Corpus level: clipping per sentence pair, counts summed. Throws
// FormatError on mismatched line counts.
UnigramStats corpus_unigram_stats(const TokenLines& hyp, const TokenLines& ref);

struct ChrfConfig {
  double beta = 3.0;
  std::uint32_t max_n = 6;
  // Whitespace is always stripped before n-gram extraction.
};

// Character n-gram F-score of one text pair: per order 1..max_n, clipped
// precision and recall; orders empty on both sides are skipped, orders empty
// on one side contribute zero; P and R are averaged uniformly over the
// included orders and combined into F-beta, scaled to [0, 100].
double chrf(std::string_view hyp, std::string_view ref, const ChrfConfig& cfg = {});

// Corpus level: per-order clipped counts summed over line pairs.
double chrf_corpus(const std::vector<std::string>& hyp_lines,
                   const std::vector<std::string>& ref_lines, const ChrfConfig& cfg = {});

// Frequency ranks over a training table: 1-based positions in descending
// count order, ties broken lexicographically. Rank 0 means out of vocabulary.
class FrequencyRanking {
 public:
  explicit FrequencyRanking(const WordFrequencyTable& table);

  std::uint64_t rank(std::string_view word) const;
  std::uint64_t frequency(std::string_view word) const;
  std::uint64_t vocabulary_size() const { return ranks_.size(); }

 private:
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>, std::less<>> ranks_;
};

struct CategoryScores {
  PrecisionRecallF1 all;
  PrecisionRecallF1 rare;  // training rank above the threshold
  PrecisionRecallF1 oov;   // absent from the training table
  std::uint64_t rare_rank_threshold = 0;
};

CategoryScores per_category_f1(const TokenLines& hyp, const TokenLines& ref,
                               const WordFrequencyTable& training,
                               std::uint64_t rare_rank_threshold = 50000);

struct FrequencyBinRow {
  std::uint64_t rank = 0;       // first training rank of this frequency (vocab size + 1 for OOV)
  std::uint64_t frequency = 0;  // training frequency shared by the bin (0 for OOV)
  double f1 = 0;
  std::uint64_t n_types = 0;    // reference types in the bin
  std::uint64_t n_tokens = 0;   // reference tokens in the bin
};

// Words grouped into bins of equal training frequency, descending, with OOVs
// last. Bins cover every hypothesis and reference word, so the bin counts
// weighted back together reproduce the corpus totals.
std::vector<FrequencyBinRow> f1_by_frequency_rank(const TokenLines& hyp, const TokenLines& ref,
                                                  const WordFrequencyTable& training);

struct CorpusStatistics {
  std::uint64_t tokens = 0;   // training tokens (written units)
  std::uint64_t types = 0;    // distinct training units
  std::uint64_t unknown = 0;  // test tokens absent from the training types
};

CorpusStatistics corpus_statistics(const SegmentedText& train, const SegmentedText& test);

}  // namespace subword
