#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "subword/core.hpp"

namespace subword {

enum class TranslitDirection { CyrillicToLatin, LatinToCyrillic };

struct TranslitResult {
  std::string text;
  // Latin-script spans that are not in the invertible image, passed through
  // unchanged, with occurrence counts.
  std::map<std::string, std::uint64_t> untranslatable;
};

// Bijective Cyrillic <-> Latin character mapping (ISO 9:1995 system A).
// Latin images are NFC-normalized and parsed back by greedy longest match,
// so base letters and base+combining-mark images coexist unambiguously.
class TransliterationTable {
 public:
  // The shipped table: the full modern Russian alphabet plus the common
  // ISO 9 extension letters, restricted to a collision-free invertible set.
  static const TransliterationTable& iso9();

  // "cyrillic<TAB>latin" per line, UTF-8, NFC.
  static TransliterationTable parse(std::istream& in, std::string_view source = "<table>");
  void write(std::ostream& out) const;

  std::string to_latin(std::string_view text) const;
  TranslitResult to_cyrillic(std::string_view text) const;

  const std::map<char32_t, std::string>& forward() const { return forward_; }

 private:
  explicit TransliterationTable(std::map<char32_t, std::string> forward);
  void build_inverse();

  std::map<char32_t, std::string> forward_;
  struct InverseEntry {
    std::vector<char32_t> latin;
    char32_t cyrillic;
  };
  // Keyed by first Latin scalar; candidates sorted longest first.
  std::map<char32_t, std::vector<InverseEntry>> inverse_;
};

std::string cyrillic_to_latin(std::string_view text,
                              const TransliterationTable& table = TransliterationTable::iso9());
TranslitResult latin_to_cyrillic(std::string_view text,
                                 const TransliterationTable& table = TransliterationTable::iso9());

struct MergeTranslitResult {
  MergeTable table;
  // Rules dropped because their transliteration does not round-trip.
  std::vector<MergeRule> dropped;
};

// Maps each rule's left/right strings, preserving rank order. Rules whose
// transliteration is not invertible are dropped and reported.
MergeTranslitResult transliterate_merge_table(const MergeTable& table, TranslitDirection direction,
                                              const TransliterationTable& translit = TransliterationTable::iso9());

}  // namespace subword
