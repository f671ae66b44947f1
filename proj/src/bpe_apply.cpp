#include "subword/bpe_apply.hpp"

#include <limits>

#include "subword/unicode.hpp"

namespace subword {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Single scalars and the bare end-of-word marker cannot be reversed further.
bool is_atomic(std::string_view symbol) {
  if (symbol == kEow)
    return true;
  std::size_t pos = 0;
  char32_t cp;
  return unicode::decode_next(symbol, pos, cp) && pos == symbol.size();
}

}  // namespace

std::string unit_to_symbol(std::string_view unit, bool word_final) {
  if (!word_final) {
    if (!ends_with(unit, kJoinMarker))
      throw std::invalid_argument("non-final unit lacks the join marker");
    return std::string(unit.substr(0, unit.size() - kJoinMarker.size()));
  }
  return std::string(unit) + std::string(kEow);
}

SymbolVocabulary build_network_vocabulary(const SegmentedText& corpus, std::uint64_t threshold) {
  SymbolVocabulary vocab;
  vocab.threshold = threshold;
  for (const auto& line : corpus) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      const bool word_final = !ends_with(line[i], kJoinMarker);
      vocab.counts[unit_to_symbol(line[i], word_final)] += 1;
    }
  }
  if (threshold > 0) {
    for (auto it = vocab.counts.begin(); it != vocab.counts.end();) {
      if (it->second < threshold)
        it = vocab.counts.erase(it);
      else
        ++it;
    }
  }
  return vocab;
}

std::uint64_t UnknownReport::total() const {
  std::uint64_t sum = 0;
  for (const auto& [symbol, count] : counts)
    sum += count;
  return sum;
}

BpeApplier::BpeApplier(MergeTable table) : table_(std::move(table)) {
  rank_.reserve(table_.rules.size());
  derivation_.reserve(table_.rules.size());
  for (std::uint32_t r = 0; r < table_.rules.size(); ++r) {
    const auto& rule = table_.rules[r];
    rank_.emplace(std::make_pair(rule.left, rule.right), r);
    // Later rules win: reversal undoes the last merge that forms a symbol.
    derivation_[rule.result()] = r;
  }
}

SymbolSequence BpeApplier::apply_merges(std::string_view word) const {
  SymbolSequence syms = initial_symbolization(word);
  if (table_.rules.empty())
    return syms;

  while (syms.size() >= 2) {
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t best = kNone;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = rank_.find({syms[i], syms[i + 1]});
      if (it != rank_.end() && it->second < best)
        best = it->second;
    }
    if (best == kNone)
      break;

    const auto& rule = table_.rules[best];
    const std::string merged = rule.result();
    SymbolSequence next;
    next.reserve(syms.size());
    std::size_t i = 0;
    while (i < syms.size()) {
      if (i + 1 < syms.size() && syms[i] == rule.left && syms[i + 1] == rule.right) {
        next.push_back(merged);
        i += 2;
      } else {
        next.push_back(syms[i]);
        ++i;
      }
    }
    syms = std::move(next);
  }
  return syms;
}

SymbolSequence BpeApplier::split_to_known(const std::string& symbol, const SymbolVocabulary& vocab,
                                          std::map<std::string, std::uint64_t>* unknown) const {
  if (vocab.contains(symbol))
    return {symbol};
  if (is_atomic(symbol)) {
    if (unknown)
      (*unknown)[symbol] += 1;
    return {symbol};
  }
  auto it = derivation_.find(symbol);
  if (it == derivation_.end())
    throw std::logic_error("symbol '" + symbol + "' is not derivable from the merge table");
  const auto& rule = table_.rules[it->second];
  SymbolSequence out = split_to_known(rule.left, vocab, unknown);
  SymbolSequence right = split_to_known(rule.right, vocab, unknown);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

ApplyResult apply_to_corpus(const std::vector<std::string>& lines, const MergeTable& table,
                            const SymbolVocabulary* vocab) {
  const BpeApplier applier(table);
  ApplyResult result;
  result.text.reserve(lines.size());

  struct CachedWord {
    SegmentedLine units;
    std::map<std::string, std::uint64_t> unknown;
  };
  std::unordered_map<std::string, CachedWord> cache;

  for (std::size_t line_no = 1; line_no <= lines.size(); ++line_no) {
    if (!unicode::is_valid_utf8(lines[line_no - 1]))
      throw FormatError("line " + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    SegmentedLine out_line;
    for (const auto& token : split_tokens(lines[line_no - 1])) {
      check_no_marker(token, line_no);
      auto it = cache.find(token);
      if (it == cache.end()) {
        CachedWord entry;
        SymbolSequence syms = applier.apply_merges(token);
        if (vocab) {
          SymbolSequence constrained;
          for (const auto& sym : syms) {
            SymbolSequence pieces = applier.split_to_known(sym, *vocab, &entry.unknown);
            constrained.insert(constrained.end(), pieces.begin(), pieces.end());
          }
          syms = std::move(constrained);
        }
        entry.units = serialize_segmentation(syms);
        it = cache.emplace(token, std::move(entry)).first;
      }
      const CachedWord& cached = it->second;
      out_line.insert(out_line.end(), cached.units.begin(), cached.units.end());
      for (const auto& [symbol, count] : cached.unknown)
        result.unknown.counts[symbol] += count;
    }
    result.text.push_back(std::move(out_line));
  }
  return result;
}

}  // namespace subword
