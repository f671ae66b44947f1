#include "subword/bpe_learn.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

namespace subword {

SymbolizedTable symbolize_table(const WordFrequencyTable& table) {
  SymbolizedTable out;
  out.reserve(table.entries.size());
  for (const auto& [word, freq] : table.entries)
    out.push_back({word, freq, initial_symbolization(word)});
  return out;
}

PairCounts count_pair_frequencies(const SymbolizedTable& table) {
  PairCounts counts;
  for (const auto& entry : table) {
    const auto& syms = entry.symbols;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i)
      counts[{syms[i], syms[i + 1]}] += entry.freq;
  }
  return counts;
}

std::size_t merge_pair(const SymbolPair& pair, SymbolizedTable& table) {
  std::size_t replaced = 0;
  const std::string merged = pair.first + pair.second;
  for (auto& entry : table) {
    auto& syms = entry.symbols;
    SymbolSequence out;
    out.reserve(syms.size());
    std::size_t i = 0;
    bool changed = false;
    while (i < syms.size()) {
      if (i + 1 < syms.size() && syms[i] == pair.first && syms[i + 1] == pair.second) {
        out.push_back(merged);
        i += 2;
        ++replaced;
        changed = true;
      } else {
        out.push_back(syms[i]);
        ++i;
      }
    }
    if (changed)
      syms = std::move(out);
  }
  return replaced;
}

namespace {

// Both learners run on interned symbol ids; strings are only needed to break
// count ties lexicographically and to emit rules. A deque keeps references to
// interned strings stable while new symbols are added.
struct SymbolInterner {
  std::deque<std::string> text;
  std::unordered_map<std::string, std::uint32_t> ids;

  std::uint32_t intern(const std::string& s) {
    auto it = ids.find(s);
    if (it != ids.end())
      return it->second;
    const auto id = static_cast<std::uint32_t>(text.size());
    text.push_back(s);
    ids.emplace(s, id);
    return id;
  }
};

using PairKey = std::uint64_t;

PairKey pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<PairKey>(a) << 32) | b;
}

struct IdWord {
  std::vector<std::uint32_t> syms;
  std::uint64_t freq = 0;
};

struct IdTable {
  SymbolInterner interner;
  std::vector<IdWord> words;
};

IdTable intern_table(const SymbolizedTable& table) {
  IdTable out;
  out.words.reserve(table.size());
  for (const auto& entry : table) {
    IdWord w;
    w.freq = entry.freq;
    w.syms.reserve(entry.symbols.size());
    for (const auto& s : entry.symbols)
      w.syms.push_back(out.interner.intern(s));
    out.words.push_back(std::move(w));
  }
  return out;
}

// count desc, then (left, right) lexicographic asc. UTF-8 byte order equals
// scalar order, so plain string comparison is the declared tie-break.
bool selection_less(std::uint64_t count_a, const std::string& la, const std::string& ra,
                    std::uint64_t count_b, const std::string& lb, const std::string& rb) {
  if (count_a != count_b)
    return count_a > count_b;
  if (la != lb)
    return la < lb;
  return ra < rb;
}

SymbolizedTable export_state(const IdTable& table, const SymbolizedTable& original) {
  SymbolizedTable out;
  out.reserve(table.words.size());
  for (std::size_t i = 0; i < table.words.size(); ++i) {
    SymbolizedWord w;
    w.word = original[i].word;
    w.freq = original[i].freq;
    w.symbols.reserve(table.words[i].syms.size());
    for (auto id : table.words[i].syms)
      w.symbols.push_back(table.interner.text[id]);
    out.push_back(std::move(w));
  }
  return out;
}

LearnResult finish(const IdTable& table, const SymbolizedTable& original,
                   std::vector<MergeRule> rules, std::vector<std::uint64_t> counts) {
  LearnResult result;
  result.table.rules = std::move(rules);
  result.selection_counts = std::move(counts);
  result.final_state = export_state(table, original);
  return result;
}

}  // namespace

LearnResult learn_bpe(const WordFrequencyTable& table, const LearnConfig& cfg) {
  if (table.empty())
    throw std::invalid_argument("cannot learn merges from an empty word table");
  if (cfg.num_merges == 0)
    throw std::invalid_argument("number of merges must be at least 1");

  const SymbolizedTable original = symbolize_table(table);
  IdTable state = intern_table(original);

  std::vector<MergeRule> rules;
  std::vector<std::uint64_t> selection_counts;
  std::unordered_map<PairKey, std::uint64_t> counts;

  for (std::uint32_t iter = 0; iter < cfg.num_merges; ++iter) {
    counts.clear();
    for (const auto& word : state.words)
      for (std::size_t i = 0; i + 1 < word.syms.size(); ++i)
        counts[pair_key(word.syms[i], word.syms[i + 1])] += word.freq;
    if (counts.empty())
      break;

    bool have_best = false;
    std::uint64_t best_count = 0;
    std::uint32_t best_left = 0, best_right = 0;
    for (const auto& [key, count] : counts) {
      const auto left = static_cast<std::uint32_t>(key >> 32);
      const auto right = static_cast<std::uint32_t>(key & 0xFFFFFFFF);
      if (!have_best ||
          selection_less(count, state.interner.text[left], state.interner.text[right],
                         best_count, state.interner.text[best_left], state.interner.text[best_right])) {
        have_best = true;
        best_count = count;
        best_left = left;
        best_right = right;
      }
    }
    if (best_count < cfg.min_frequency)
      break;

    const std::string& left = state.interner.text[best_left];
    const std::string& right = state.interner.text[best_right];
    const std::uint32_t merged = state.interner.intern(left + right);
    for (auto& word : state.words) {
      auto& syms = word.syms;
      std::size_t write = 0, read = 0;
      while (read < syms.size()) {
        if (read + 1 < syms.size() && syms[read] == best_left && syms[read + 1] == best_right) {
          syms[write++] = merged;
          read += 2;
        } else {
          syms[write++] = syms[read++];
        }
      }
      syms.resize(write);
    }

    rules.push_back({state.interner.text[best_left], state.interner.text[best_right]});
    selection_counts.push_back(best_count);
  }

  return finish(state, original, std::move(rules), std::move(selection_counts));
}

namespace {

// State of the incremental learner: exact pair counts, a pair -> containing
// words index, and an ordered candidate set giving the next selection in
// O(log n). Counts only ever change along the neighborhoods of the words a
// merge touched, so each iteration costs time proportional to the change.
class IndexedLearner {
 public:
  IndexedLearner(IdTable&& table) : table_(std::move(table)) {
    for (std::size_t w = 0; w < table_.words.size(); ++w) {
      const auto& word = table_.words[w];
      for (std::size_t i = 0; i + 1 < word.syms.size(); ++i)
        add_occurrence(pair_key(word.syms[i], word.syms[i + 1]),
                       static_cast<std::uint32_t>(w), word.freq);
    }
    for (const auto& [key, count] : counts_)
      candidates_.insert(make_candidate(key, count));
  }

  bool step(std::uint64_t min_frequency, MergeRule& rule_out, std::uint64_t& count_out) {
    if (candidates_.empty())
      return false;
    const Candidate best = *candidates_.begin();
    if (best.count < min_frequency)
      return false;

    const auto left = static_cast<std::uint32_t>(best.key >> 32);
    const auto right = static_cast<std::uint32_t>(best.key & 0xFFFFFFFF);
    rule_out = {table_.interner.text[left], table_.interner.text[right]};
    count_out = best.count;
    merge_best(best.key, left, right);
    return true;
  }

  IdTable& table() { return table_; }

 private:
  struct Candidate {
    std::uint64_t count;
    PairKey key;
    // Interned string pointers; stable because interner text is only appended.
    const std::string* left;
    const std::string* right;
  };
  struct CandidateLess {
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count)
        return a.count > b.count;
      if (*a.left != *b.left)
        return *a.left < *b.left;
      if (*a.right != *b.right)
        return *a.right < *b.right;
      return false;
    }
  };

  Candidate make_candidate(PairKey key, std::uint64_t count) const {
    return {count, key, &table_.interner.text[static_cast<std::uint32_t>(key >> 32)],
            &table_.interner.text[static_cast<std::uint32_t>(key & 0xFFFFFFFF)]};
  }

  void add_occurrence(PairKey key, std::uint32_t word_id, std::uint64_t freq) {
    counts_[key] += freq;
    index_[key][word_id] += 1;
  }

  // Applies a count delta and keeps the candidate set in sync.
  void apply_delta(PairKey key, std::int64_t delta) {
    if (delta == 0)
      return;
    auto it = counts_.find(key);
    const std::uint64_t old_count = it == counts_.end() ? 0 : it->second;
    if (static_cast<std::int64_t>(old_count) + delta < 0)
      throw std::logic_error("pair count underflow in incremental learner");
    if (old_count > 0)
      candidates_.erase(make_candidate(key, old_count));
    const std::uint64_t new_count = static_cast<std::uint64_t>(
        static_cast<std::int64_t>(old_count) + delta);
    if (new_count == 0) {
      if (it != counts_.end())
        counts_.erase(it);
    } else {
      counts_[key] = new_count;
      candidates_.insert(make_candidate(key, new_count));
    }
  }

  void merge_best(PairKey key, std::uint32_t left, std::uint32_t right) {
    const std::uint32_t merged =
        table_.interner.intern(table_.interner.text[left] + table_.interner.text[right]);

    // Take ownership of the posting list; it is fully rebuilt below.
    auto posting_it = index_.find(key);
    std::unordered_map<std::uint32_t, std::uint32_t> postings;
    if (posting_it != index_.end()) {
      postings = std::move(posting_it->second);
      index_.erase(posting_it);
    }

    std::unordered_map<PairKey, std::int64_t> deltas;
    std::vector<std::uint32_t> touched;
    touched.reserve(postings.size());
    for (const auto& [word_id, occurrences] : postings)
      if (occurrences > 0)
        touched.push_back(word_id);
    // Deterministic processing order is not required for correctness (all
    // deltas commute) but keeps behavior reproducible under inspection.
    std::sort(touched.begin(), touched.end());

    for (const auto word_id : touched) {
      auto& word = table_.words[word_id];
      auto& syms = word.syms;

      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        const PairKey old_pair = pair_key(syms[i], syms[i + 1]);
        deltas[old_pair] -= static_cast<std::int64_t>(word.freq);
        decrement_index(old_pair, word_id);
      }

      std::size_t write = 0, read = 0;
      while (read < syms.size()) {
        if (read + 1 < syms.size() && syms[read] == left && syms[read + 1] == right) {
          syms[write++] = merged;
          read += 2;
        } else {
          syms[write++] = syms[read++];
        }
      }
      syms.resize(write);

      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        const PairKey new_pair = pair_key(syms[i], syms[i + 1]);
        deltas[new_pair] += static_cast<std::int64_t>(word.freq);
        index_[new_pair][word_id] += 1;
      }
    }

    for (const auto& [pair, delta] : deltas)
      apply_delta(pair, delta);

    // The merged pair itself must be gone entirely.
    auto it = counts_.find(key);
    if (it != counts_.end()) {
      candidates_.erase(make_candidate(key, it->second));
      counts_.erase(it);
    }
    index_.erase(key);
  }

  void decrement_index(PairKey key, std::uint32_t word_id) {
    auto it = index_.find(key);
    if (it == index_.end())
      return;
    auto wit = it->second.find(word_id);
    if (wit == it->second.end())
      return;
    if (--wit->second == 0)
      it->second.erase(wit);
    if (it->second.empty())
      index_.erase(it);
  }

  IdTable table_;
  std::unordered_map<PairKey, std::uint64_t> counts_;
  std::unordered_map<PairKey, std::unordered_map<std::uint32_t, std::uint32_t>> index_;
  std::set<Candidate, CandidateLess> candidates_;
};

}  // namespace

LearnResult learn_bpe_indexed(const WordFrequencyTable& table, const LearnConfig& cfg) {
  if (table.empty())
    throw std::invalid_argument("cannot learn merges from an empty word table");
  if (cfg.num_merges == 0)
    throw std::invalid_argument("number of merges must be at least 1");

  const SymbolizedTable original = symbolize_table(table);
  IndexedLearner learner(intern_table(original));

  std::vector<MergeRule> rules;
  std::vector<std::uint64_t> selection_counts;
  MergeRule rule;
  std::uint64_t count = 0;
  while (rules.size() < cfg.num_merges && learner.step(cfg.min_frequency, rule, count)) {
    rules.push_back(rule);
    selection_counts.push_back(count);
  }

  return finish(learner.table(), original, std::move(rules), std::move(selection_counts));
}

}  // namespace subword
