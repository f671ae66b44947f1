#pragma once

// Shared fixtures, random generators and independent oracle implementations.
// The oracles here deliberately re-derive results by brute force and must not
// call into the code paths they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subword/bpe_learn.hpp"
#include "subword/core.hpp"
#include "subword/formats.hpp"
#include "subword/unicode.hpp"

namespace testutil {

using namespace subword;

inline WordFrequencyTable figure1_dictionary() {
  WordFrequencyTable table;
  table.add("low");
  table.add("lowest");
  table.add("newer");
  table.add("wider");
  return table;
}

// The worked learning dictionary: {'l o w </w>':5, 'l o w e r </w>':2,
// 'n e w e s t </w>':6, 'w i d e s t </w>':3}.
inline WordFrequencyTable reference_dictionary() {
  WordFrequencyTable table;
  table.add("low", 5);
  table.add("lower", 2);
  table.add("newest", 6);
  table.add("widest", 3);
  return table;
}

// ---- random generators ----

inline std::string random_word(std::mt19937& rng, std::size_t max_len,
                               const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<std::size_t> char_dist(0, alphabet.size() - 1);
  const std::size_t len = len_dist(rng);
  std::string word;
  for (std::size_t i = 0; i < len; ++i)
    word += alphabet[char_dist(rng)];
  return word;
}

inline std::vector<std::string> ascii_alphabet(std::size_t letters = 8) {
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < letters && i < 26; ++i)
    alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  return alphabet;
}

inline std::vector<std::string> mixed_unicode_alphabet() {
  return {"a", "b", "c", "é", "ß", "ж", "中", "\U0001F600", "z", "0"};
}

inline WordFrequencyTable random_table(std::mt19937& rng, std::size_t max_types,
                                       std::size_t max_len, std::uint64_t max_count,
                                       const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> type_dist(1, max_types);
  std::uniform_int_distribution<std::uint64_t> count_dist(1, max_count);
  WordFrequencyTable table;
  const std::size_t types = type_dist(rng);
  for (std::size_t i = 0; i < types; ++i)
    table.add(random_word(rng, max_len, alphabet), count_dist(rng));
  return table;
}

inline std::vector<std::string> random_lines(std::mt19937& rng, std::size_t lines,
                                             std::size_t max_words, std::size_t max_len,
                                             const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> words_dist(0, max_words);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines; ++i) {
    const std::size_t words = words_dist(rng);
    std::string line;
    for (std::size_t w = 0; w < words; ++w) {
      if (w)
        line += ' ';
      line += random_word(rng, max_len, alphabet);
    }
    out.push_back(std::move(line));
  }
  return out;
}

// ---- oracles ----

// Training-time replay: applies the rules rank by rank to the whole table,
// exactly mirroring how the learner's state evolves.
inline SymbolizedTable replay_rules(const WordFrequencyTable& table, const MergeTable& merges) {
  SymbolizedTable state = symbolize_table(table);
  for (const auto& rule : merges.rules)
    merge_pair({rule.left, rule.right}, state);
  return state;
}

// Clipped unigram counts by explicit multiset intersection.
struct OracleCounts {
  std::uint64_t match = 0;
  std::uint64_t hyp = 0;
  std::uint64_t ref = 0;
};

inline OracleCounts oracle_clipped_counts(const std::vector<std::string>& hyp,
                                          const std::vector<std::string>& ref) {
  OracleCounts counts;
  counts.hyp = hyp.size();
  counts.ref = ref.size();
  std::map<std::string, std::uint64_t> hyp_multiset, ref_multiset;
  for (const auto& t : hyp)
    hyp_multiset[t] += 1;
  for (const auto& t : ref)
    ref_multiset[t] += 1;
  for (const auto& [token, n] : hyp_multiset) {
    auto it = ref_multiset.find(token);
    if (it != ref_multiset.end())
      counts.match += std::min(n, it->second);
  }
  return counts;
}

// chrF by direct n-gram enumeration, following the declared conventions:
// spaces stripped, clipped multiset overlap per order, orders empty on both
// sides skipped, P and R averaged uniformly, F-beta scaled to [0, 100].
inline double oracle_chrf(const std::string& hyp, const std::string& ref, double beta,
                          std::uint32_t max_n) {
  const auto strip = [](const std::string& text) {
    std::vector<std::string> scalars;
    for (auto& s : unicode::split_scalars(text))
      if (s != " " && s != "\t")
        scalars.push_back(std::move(s));
    return scalars;
  };
  const auto hyp_chars = strip(hyp);
  const auto ref_chars = strip(ref);

  const auto ngrams = [](const std::vector<std::string>& chars, std::uint32_t n) {
    std::map<std::string, std::uint64_t> grams;
    if (chars.size() >= n) {
      for (std::size_t i = 0; i + n <= chars.size(); ++i) {
        std::string g;
        for (std::uint32_t j = 0; j < n; ++j)
          g += chars[i + j];
        grams[g] += 1;
      }
    }
    return grams;
  };

  double precision_sum = 0, recall_sum = 0;
  std::size_t included = 0;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    const auto hyp_grams = ngrams(hyp_chars, n);
    const auto ref_grams = ngrams(ref_chars, n);
    std::uint64_t hyp_total = 0, ref_total = 0, match = 0;
    for (const auto& [g, c] : hyp_grams)
      hyp_total += c;
    for (const auto& [g, c] : ref_grams)
      ref_total += c;
    for (const auto& [g, c] : hyp_grams) {
      auto it = ref_grams.find(g);
      if (it != ref_grams.end())
        match += std::min(c, it->second);
    }
    if (hyp_total == 0 && ref_total == 0)
      continue;
    ++included;
    if (hyp_total > 0)
      precision_sum += static_cast<double>(match) / hyp_total;
    if (ref_total > 0)
      recall_sum += static_cast<double>(match) / ref_total;
  }
  if (included == 0)
    return 100.0;
  const double precision = precision_sum / included;
  const double recall = recall_sum / included;
  const double beta2 = beta * beta;
  const double denominator = beta2 * precision + recall;
  if (denominator == 0)
    return 0.0;
  return 100.0 * (1 + beta2) * precision * recall / denominator;
}

// Weighted symbol count of a learner state (corpus token count).
inline std::uint64_t weighted_symbol_count(const SymbolizedTable& state) {
  std::uint64_t total = 0;
  for (const auto& entry : state)
    total += entry.freq * entry.symbols.size();
  return total;
}

inline std::set<std::string> symbol_types(const SymbolizedTable& state) {
  std::set<std::string> types;
  for (const auto& entry : state)
    for (const auto& symbol : entry.symbols)
      types.insert(symbol);
  return types;
}

inline std::string merge_file_bytes(const MergeTable& table) {
  std::ostringstream out;
  write_merge_table(table, out);
  return out.str();
}

}  // namespace testutil
