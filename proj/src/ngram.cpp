#include "subword/ngram.hpp"

#include <algorithm>

#include "subword/unicode.hpp"

namespace subword {

std::set<std::string> make_shortlist(const WordFrequencyTable& table, std::uint32_t k) {
  std::vector<std::pair<std::string_view, std::uint64_t>> order;
  order.reserve(table.entries.size());
  for (const auto& [word, count] : table.entries)
    order.emplace_back(word, count);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second)
      return a.second > b.second;
    return a.first < b.first;
  });
  std::set<std::string> shortlist;
  for (std::size_t i = 0; i < order.size() && i < k; ++i)
    shortlist.emplace(order[i].first);
  return shortlist;
}

NgramConfig make_ngram_config(std::uint32_t n, std::uint32_t shortlist_size,
                              const WordFrequencyTable* table) {
  if (n == 0)
    throw std::invalid_argument("n-gram size must be at least 1");
  NgramConfig cfg;
  cfg.n = n;
  if (shortlist_size > 0) {
    if (!table)
      throw std::invalid_argument("a shortlist needs a word-frequency table");
    cfg.shortlist = make_shortlist(*table, shortlist_size);
  }
  return cfg;
}

SymbolSequence segment_ngrams(std::string_view word, const NgramConfig& cfg) {
  if (word.empty())
    throw std::invalid_argument("cannot segment an empty word");
  if (cfg.n == 0)
    throw std::invalid_argument("n-gram size must be at least 1");

  SymbolSequence out;
  if (cfg.shortlist.count(std::string(word))) {
    out.push_back(std::string(word));
  } else {
    const auto scalars = unicode::split_scalars(word);
    std::string chunk;
    std::uint32_t filled = 0;
    for (const auto& scalar : scalars) {
      chunk += scalar;
      if (++filled == cfg.n) {
        out.push_back(std::move(chunk));
        chunk.clear();
        filled = 0;
      }
    }
    if (!chunk.empty())
      out.push_back(std::move(chunk));
  }

  if (cfg.detached_eow)
    out.emplace_back(kEow);
  else
    out.back() += kEow;
  return out;
}

SegmentedText segment_corpus_ngrams(const std::vector<std::string>& lines, const NgramConfig& cfg) {
  SegmentedText out;
  out.reserve(lines.size());
  for (std::size_t line_no = 1; line_no <= lines.size(); ++line_no) {
    if (!unicode::is_valid_utf8(lines[line_no - 1]))
      throw FormatError("line " + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    SegmentedLine out_line;
    for (const auto& token : split_tokens(lines[line_no - 1])) {
      check_no_marker(token, line_no);
      const auto units = serialize_segmentation(segment_ngrams(token, cfg));
      out_line.insert(out_line.end(), units.begin(), units.end());
    }
    out.push_back(std::move(out_line));
  }
  return out;
}

}  // namespace subword
