#include "subword/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "subword/unicode.hpp"

namespace subword {

UnigramStats& UnigramStats::operator+=(const UnigramStats& other) {
  match += other.match;
  hyp += other.hyp;
  ref += other.ref;
  return *this;
}

UnigramStats clipped_unigram_stats(const TokenLine& hyp, const TokenLine& ref) {
  UnigramStats stats;
  stats.hyp = hyp.size();
  stats.ref = ref.size();
  std::unordered_map<std::string, std::uint64_t> ref_counts;
  for (const auto& token : ref)
    ref_counts[token] += 1;
  for (const auto& token : hyp) {
    auto it = ref_counts.find(token);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++stats.match;
    }
  }
  return stats;
}

PrecisionRecallF1 scores_from(const UnigramStats& stats) {
  PrecisionRecallF1 scores;
  if (stats.hyp == 0 && stats.ref == 0) {
    scores.precision = scores.recall = scores.f1 = 1.0;
    return scores;
  }
  scores.precision = stats.hyp == 0 ? 0.0 : static_cast<double>(stats.match) / stats.hyp;
  scores.recall = stats.ref == 0 ? 0.0 : static_cast<double>(stats.match) / stats.ref;
  const double sum = scores.precision + scores.recall;
  scores.f1 = sum == 0 ? 0.0 : 2 * scores.precision * scores.recall / sum;
  return scores;
}

PrecisionRecallF1 clipped_unigram_scores(const TokenLine& hyp, const TokenLine& ref) {
  return scores_from(clipped_unigram_stats(hyp, ref));
}

UnigramStats corpus_unigram_stats(const TokenLines& hyp, const TokenLines& ref) {
  if (hyp.size() != ref.size())
    throw FormatError("hypothesis has " + std::to_string(hyp.size()) + " lines but reference has " +
                      std::to_string(ref.size()));
  UnigramStats stats;
  for (std::size_t i = 0; i < hyp.size(); ++i)
    stats += clipped_unigram_stats(hyp[i], ref[i]);
  return stats;
}

namespace {

std::vector<std::string> strip_spaces(std::string_view text) {
  std::vector<std::string> scalars;
  for (auto& s : unicode::split_scalars(text)) {
    if (s == " " || s == "\t")
      continue;
    scalars.push_back(std::move(s));
  }
  return scalars;
}

struct ChrfOrderStats {
  std::uint64_t match = 0;
  std::uint64_t hyp = 0;
  std::uint64_t ref = 0;
};

// Clipped n-gram overlap of one line pair for every order.
void accumulate_chrf(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                     std::uint32_t max_n, std::vector<ChrfOrderStats>& orders) {
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    auto& stats = orders[n - 1];
    const std::size_t hyp_total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
    const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
    stats.hyp += hyp_total;
    stats.ref += ref_total;
    if (hyp_total == 0 || ref_total == 0)
      continue;
    std::unordered_map<std::string, std::uint64_t> ref_ngrams;
    std::string key;
    for (std::size_t i = 0; i < ref_total; ++i) {
      key.clear();
      for (std::uint32_t j = 0; j < n; ++j)
        key += ref[i + j];
      ref_ngrams[key] += 1;
    }
    for (std::size_t i = 0; i < hyp_total; ++i) {
      key.clear();
      for (std::uint32_t j = 0; j < n; ++j)
        key += hyp[i + j];
      auto it = ref_ngrams.find(key);
      if (it != ref_ngrams.end() && it->second > 0) {
        --it->second;
        ++stats.match;
      }
    }
  }
}

double chrf_from_orders(const std::vector<ChrfOrderStats>& orders, double beta) {
  double precision_sum = 0, recall_sum = 0;
  std::size_t included = 0;
  bool any_content = false;
  for (const auto& stats : orders) {
    if (stats.hyp == 0 && stats.ref == 0)
      continue;  // both sides lack this order entirely
    ++included;
    any_content = true;
    if (stats.hyp > 0)
      precision_sum += static_cast<double>(stats.match) / stats.hyp;
    if (stats.ref > 0)
      recall_sum += static_cast<double>(stats.match) / stats.ref;
  }
  if (!any_content)
    return 100.0;  // two empty texts are identical
  const double precision = precision_sum / included;
  const double recall = recall_sum / included;
  const double beta2 = beta * beta;
  const double denominator = beta2 * precision + recall;
  if (denominator == 0)
    return 0.0;
  return 100.0 * (1 + beta2) * precision * recall / denominator;
}

}  // namespace

double chrf(std::string_view hyp, std::string_view ref, const ChrfConfig& cfg) {
  if (cfg.max_n == 0 || cfg.beta <= 0)
    throw std::invalid_argument("chrF needs max_n >= 1 and beta > 0");
  std::vector<ChrfOrderStats> orders(cfg.max_n);
  accumulate_chrf(strip_spaces(hyp), strip_spaces(ref), cfg.max_n, orders);
  return chrf_from_orders(orders, cfg.beta);
}

double chrf_corpus(const std::vector<std::string>& hyp_lines,
                   const std::vector<std::string>& ref_lines, const ChrfConfig& cfg) {
  if (cfg.max_n == 0 || cfg.beta <= 0)
    throw std::invalid_argument("chrF needs max_n >= 1 and beta > 0");
  if (hyp_lines.size() != ref_lines.size())
    throw FormatError("hypothesis has " + std::to_string(hyp_lines.size()) +
                      " lines but reference has " + std::to_string(ref_lines.size()));
  std::vector<ChrfOrderStats> orders(cfg.max_n);
  for (std::size_t i = 0; i < hyp_lines.size(); ++i)
    accumulate_chrf(strip_spaces(hyp_lines[i]), strip_spaces(ref_lines[i]), cfg.max_n, orders);
  return chrf_from_orders(orders, cfg.beta);
}

FrequencyRanking::FrequencyRanking(const WordFrequencyTable& table) {
  std::vector<std::pair<std::string_view, std::uint64_t>> order;
  order.reserve(table.entries.size());
  for (const auto& [word, count] : table.entries)
    order.emplace_back(word, count);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second)
      return a.second > b.second;
    return a.first < b.first;
  });
  for (std::size_t i = 0; i < order.size(); ++i)
    ranks_.emplace(std::string(order[i].first), std::make_pair(i + 1, order[i].second));
}

std::uint64_t FrequencyRanking::rank(std::string_view word) const {
  auto it = ranks_.find(word);
  return it == ranks_.end() ? 0 : it->second.first;
}

std::uint64_t FrequencyRanking::frequency(std::string_view word) const {
  auto it = ranks_.find(word);
  return it == ranks_.end() ? 0 : it->second.second;
}

namespace {

template <typename Predicate>
UnigramStats filtered_corpus_stats(const TokenLines& hyp, const TokenLines& ref, Predicate keep) {
  UnigramStats stats;
  TokenLine hyp_kept, ref_kept;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    hyp_kept.clear();
    ref_kept.clear();
    for (const auto& token : hyp[i])
      if (keep(token))
        hyp_kept.push_back(token);
    for (const auto& token : ref[i])
      if (keep(token))
        ref_kept.push_back(token);
    stats += clipped_unigram_stats(hyp_kept, ref_kept);
  }
  return stats;
}

}  // namespace

CategoryScores per_category_f1(const TokenLines& hyp, const TokenLines& ref,
                               const WordFrequencyTable& training,
                               std::uint64_t rare_rank_threshold) {
  if (hyp.size() != ref.size())
    throw FormatError("hypothesis has " + std::to_string(hyp.size()) + " lines but reference has " +
                      std::to_string(ref.size()));
  const FrequencyRanking ranking(training);
  CategoryScores scores;
  scores.rare_rank_threshold = rare_rank_threshold;
  scores.all = scores_from(filtered_corpus_stats(hyp, ref, [](const std::string&) { return true; }));
  // OOVs have no training rank, so they land only in their own category.
  scores.rare = scores_from(filtered_corpus_stats(hyp, ref, [&](const std::string& token) {
    const std::uint64_t rank = ranking.rank(token);
    return rank > rare_rank_threshold;
  }));
  scores.oov = scores_from(filtered_corpus_stats(hyp, ref, [&](const std::string& token) {
    return ranking.rank(token) == 0;
  }));
  return scores;
}

std::vector<FrequencyBinRow> f1_by_frequency_rank(const TokenLines& hyp, const TokenLines& ref,
                                                  const WordFrequencyTable& training) {
  if (hyp.size() != ref.size())
    throw FormatError("hypothesis has " + std::to_string(hyp.size()) + " lines but reference has " +
                      std::to_string(ref.size()));
  const FrequencyRanking ranking(training);

  // Bins keyed by training frequency, over every word either side mentions,
  // so each token lands in exactly one bin.
  std::set<std::uint64_t, std::greater<>> frequencies;
  std::set<std::string> ref_types;
  std::map<std::string, std::uint64_t> ref_token_counts;
  for (const auto& line : ref) {
    for (const auto& token : line) {
      frequencies.insert(ranking.frequency(token));
      ref_types.insert(token);
      ref_token_counts[token] += 1;
    }
  }
  for (const auto& line : hyp)
    for (const auto& token : line)
      frequencies.insert(ranking.frequency(token));

  std::map<std::uint64_t, std::uint64_t> first_rank_of_frequency;
  {
    std::uint64_t next_rank = 1;
    std::map<std::uint64_t, std::uint64_t, std::greater<>> group_sizes;
    for (const auto& [word, count] : training.entries)
      group_sizes[count] += 1;
    for (const auto& [freq, size] : group_sizes) {
      first_rank_of_frequency[freq] = next_rank;
      next_rank += size;
    }
    first_rank_of_frequency[0] = next_rank;  // OOV bin sits past the vocabulary
  }

  std::vector<FrequencyBinRow> rows;
  for (const auto freq : frequencies) {
    FrequencyBinRow row;
    row.frequency = freq;
    row.rank = first_rank_of_frequency.at(freq);
    const auto in_bin = [&](const std::string& token) { return ranking.frequency(token) == freq; };
    row.f1 = scores_from(filtered_corpus_stats(hyp, ref, in_bin)).f1;
    for (const auto& type : ref_types) {
      if (ranking.frequency(type) == freq) {
        row.n_types += 1;
        row.n_tokens += ref_token_counts[type];
      }
    }
    rows.push_back(row);
  }
  return rows;
}

CorpusStatistics corpus_statistics(const SegmentedText& train, const SegmentedText& test) {
  CorpusStatistics stats;
  std::unordered_set<std::string> types;
  for (const auto& line : train) {
    stats.tokens += line.size();
    for (const auto& unit : line)
      types.insert(unit);
  }
  stats.types = types.size();
  for (const auto& line : test)
    for (const auto& unit : line)
      if (!types.count(unit))
        stats.unknown += 1;
  return stats;
}

}  // namespace subword
