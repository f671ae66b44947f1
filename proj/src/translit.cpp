#include "subword/translit.hpp"

#include <algorithm>

#include "subword/unicode.hpp"

namespace subword {

namespace {

// ISO 9:1995 system A. One row per Cyrillic letter; Latin images are NFC
// (precomposed where Unicode has a precomposition, base + combining mark
// where it does not). The caseless hard/soft signs of the standard would
// collapse upper and lower case into one image, so the uppercase forms use
// the plain prime characters instead of the modifier letters.
struct Row {
  char32_t cyrillic;
  const char* latin;
};

constexpr Row kIso9Rows[] = {
    // Russian alphabet.
    {U'А', "A"},      {U'а', "a"},
    {U'Б', "B"},      {U'б', "b"},
    {U'В', "V"},      {U'в', "v"},
    {U'Г', "G"},      {U'г', "g"},
    {U'Д', "D"},      {U'д', "d"},
    {U'Е', "E"},      {U'е', "e"},
    {U'Ё', "Ë"}, {U'ё', "ë"},  // Ë ë
    {U'Ж', "Ž"}, {U'ж', "ž"},  // Ž ž
    {U'З', "Z"},      {U'з', "z"},
    {U'И', "I"},      {U'и', "i"},
    {U'Й', "J"},      {U'й', "j"},
    {U'К', "K"},      {U'к', "k"},
    {U'Л', "L"},      {U'л', "l"},
    {U'М', "M"},      {U'м', "m"},
    {U'Н', "N"},      {U'н', "n"},
    {U'О', "O"},      {U'о', "o"},
    {U'П', "P"},      {U'п', "p"},
    {U'Р', "R"},      {U'р', "r"},
    {U'С', "S"},      {U'с', "s"},
    {U'Т', "T"},      {U'т', "t"},
    {U'У', "U"},      {U'у', "u"},
    {U'Ф', "F"},      {U'ф', "f"},
    {U'Х', "H"},      {U'х', "h"},
    {U'Ц', "C"},      {U'ц', "c"},
    {U'Ч', "Č"}, {U'ч', "č"},  // Č č
    {U'Ш', "Š"}, {U'ш', "š"},  // Š š
    {U'Щ', "Ŝ"}, {U'щ', "ŝ"},  // Ŝ ŝ
    {U'Ъ', "″"}, {U'ъ', "ʺ"},  // ″ ʺ
    {U'Ы', "Y"},      {U'ы', "y"},
    {U'Ь', "′"}, {U'ь', "ʹ"},  // ′ ʹ
    {U'Э', "È"}, {U'э', "è"},  // È è
    {U'Ю', "Û"}, {U'ю', "û"},  // Û û
    {U'Я', "Â"}, {U'я', "â"},  // Â â
    // ISO 9 extensions (Ukrainian, Belarusian, Serbian, Macedonian, and the
    // pre-reform Russian letters).
    {U'Ґ', "G̀"}, {U'ґ', "g̀"},
    {U'Є', "Ê"},  {U'є', "ê"},  // Ê ê
    {U'І', "Ì"},  {U'і', "ì"},  // Ì ì
    {U'Ї', "Ï"},  {U'ї', "ï"},  // Ï ï
    {U'Ў', "Ŭ"},  {U'ў', "ŭ"},  // Ŭ ŭ
    {U'Ђ', "Đ"},  {U'ђ', "đ"},  // Đ đ
    {U'Ѓ', "Ǵ"},  {U'ѓ', "ǵ"},  // Ǵ ǵ
    {U'Ѕ', "Ẑ"},  {U'ѕ', "ẑ"},  // Ẑ ẑ
    {U'Ј', "J̌"}, {U'ј', "ǰ"},  // J̌ ǰ
    {U'Љ', "L̂"}, {U'љ', "l̂"},
    {U'Њ', "N̂"}, {U'њ', "n̂"},
    {U'Ћ', "Ć"},  {U'ћ', "ć"},  // Ć ć
    {U'Ќ', "Ḱ"},  {U'ќ', "ḱ"},  // Ḱ ḱ
    {U'Џ', "D̂"}, {U'џ', "d̂"},
    {U'Ѣ', "Ě"},  {U'ѣ', "ě"},  // Ě ě
    {U'Ѳ', "F̀"}, {U'ѳ', "f̀"},
    {U'Ѵ', "Ỳ"},  {U'ѵ', "ỳ"},  // Ỳ ỳ
    {U'Ѫ', "Ǎ"},  {U'ѫ', "ǎ"},  // Ǎ ǎ
};

bool is_combining_mark(char32_t cp) {
  return cp >= 0x0300 && cp <= 0x036F;
}

// Scripts whose characters belong to the Latin image space: unconsumed ones
// are outside the invertible image and get flagged.
bool is_latin_script(char32_t cp) {
  if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z'))
    return true;
  if (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7)
    return true;  // Latin-1 letters, Latin Extended-A/B
  if (cp >= 0x1E00 && cp <= 0x1EFF)
    return true;  // Latin Extended Additional
  if (cp >= 0x02B0 && cp <= 0x02FF)
    return true;  // modifier letters
  if (is_combining_mark(cp))
    return true;
  if (cp == 0x2032 || cp == 0x2033)
    return true;  // primes
  return false;
}

}  // namespace

TransliterationTable::TransliterationTable(std::map<char32_t, std::string> forward)
    : forward_(std::move(forward)) {
  build_inverse();
}

void TransliterationTable::build_inverse() {
  inverse_.clear();
  std::map<std::string, char32_t> seen;
  for (const auto& [cyr, latin] : forward_) {
    if (latin.empty())
      throw FormatError("transliteration image must not be empty");
    if (!seen.emplace(latin, cyr).second)
      throw FormatError("transliteration table is not injective: image '" + latin +
                        "' maps from two letters");
    InverseEntry entry{unicode::decode(latin), cyr};
    inverse_[entry.latin.front()].push_back(std::move(entry));
  }
  for (auto& [first, entries] : inverse_) {
    std::sort(entries.begin(), entries.end(), [](const InverseEntry& a, const InverseEntry& b) {
      return a.latin.size() > b.latin.size();
    });
  }
}

const TransliterationTable& TransliterationTable::iso9() {
  static const TransliterationTable table = [] {
    std::map<char32_t, std::string> forward;
    for (const auto& row : kIso9Rows)
      forward.emplace(row.cyrillic, row.latin);
    return TransliterationTable(std::move(forward));
  }();
  return table;
}

TransliterationTable TransliterationTable::parse(std::istream& in, std::string_view source) {
  std::map<char32_t, std::string> forward;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    if (!unicode::is_valid_utf8(line))
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                        ": invalid UTF-8 byte sequence");
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected 'cyrillic<TAB>latin'");
    const auto cyr = unicode::decode(line.substr(0, tab));
    if (cyr.size() != 1)
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                        ": the Cyrillic side must be a single character");
    if (!forward.emplace(cyr[0], line.substr(tab + 1)).second)
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                        ": duplicate entry for '" + line.substr(0, tab) + "'");
  }
  return TransliterationTable(std::move(forward));
}

void TransliterationTable::write(std::ostream& out) const {
  for (const auto& [cyr, latin] : forward_)
    out << unicode::encode_utf8(cyr) << "\t" << latin << "\n";
}

std::string TransliterationTable::to_latin(std::string_view text) const {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (!unicode::decode_next(text, pos, cp))
      throw FormatError("invalid UTF-8 byte sequence");
    auto it = forward_.find(cp);
    if (it != forward_.end())
      out += it->second;
    else
      out.append(text.substr(start, pos - start));
  }
  return out;
}

TranslitResult TransliterationTable::to_cyrillic(std::string_view text) const {
  TranslitResult result;
  const std::vector<char32_t> scalars = unicode::decode(text);
  std::string flagged_run;

  const auto flush_run = [&] {
    if (!flagged_run.empty()) {
      result.untranslatable[flagged_run] += 1;
      flagged_run.clear();
    }
  };

  std::size_t i = 0;
  while (i < scalars.size()) {
    const auto entry_it = inverse_.find(scalars[i]);
    const InverseEntry* matched = nullptr;
    if (entry_it != inverse_.end()) {
      for (const auto& candidate : entry_it->second) {
        if (candidate.latin.size() <= scalars.size() - i &&
            std::equal(candidate.latin.begin(), candidate.latin.end(), scalars.begin() + i)) {
          matched = &candidate;
          break;  // entries are sorted longest first
        }
      }
    }
    if (matched) {
      flush_run();
      unicode::append_utf8(matched->cyrillic, result.text);
      i += matched->latin.size();
    } else {
      if (is_latin_script(scalars[i]))
        unicode::append_utf8(scalars[i], flagged_run);
      else
        flush_run();
      unicode::append_utf8(scalars[i], result.text);
      ++i;
    }
  }
  flush_run();
  return result;
}

std::string cyrillic_to_latin(std::string_view text, const TransliterationTable& table) {
  return table.to_latin(text);
}

TranslitResult latin_to_cyrillic(std::string_view text, const TransliterationTable& table) {
  return table.to_cyrillic(text);
}

MergeTranslitResult transliterate_merge_table(const MergeTable& table, TranslitDirection direction,
                                              const TransliterationTable& translit) {
  // A side the mapping left untouched is trivially invertible; anything it
  // changed must map back exactly.
  const auto map_side = [&](const std::string& text, std::string& out) {
    if (direction == TranslitDirection::CyrillicToLatin) {
      out = translit.to_latin(text);
      return out == text || translit.to_cyrillic(out).text == text;
    }
    out = translit.to_cyrillic(text).text;
    return out == text || translit.to_latin(out) == text;
  };

  MergeTranslitResult result;
  for (const auto& rule : table.rules) {
    std::string left, right;
    if (map_side(rule.left, left) && map_side(rule.right, right))
      result.table.rules.push_back({std::move(left), std::move(right)});
    else
      result.dropped.push_back(rule);
  }
  return result;
}

}  // namespace subword
