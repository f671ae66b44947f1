#include "subword/unicode.hpp"

#include <stdexcept>

namespace subword::unicode {

void append_utf8(char32_t cp, std::string& out) {
  if (cp <= 0x7F) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  append_utf8(cp, out);
  return out;
}

bool decode_next(std::string_view text, std::size_t& pos, char32_t& cp) {
  if (pos >= text.size())
    return false;
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    cp = b0;
    pos += 1;
    return true;
  }
  std::size_t len;
  char32_t value;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
  } else {
    return false;  // stray continuation or invalid lead byte
  }
  if (pos + len > text.size())
    return false;
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80)
      return false;
    value = (value << 6) | (b & 0x3F);
  }
  // Reject overlong encodings, surrogates, and out-of-range values.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMin[len] || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF))
    return false;
  cp = value;
  pos += len;
  return true;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!decode_next(text, pos, cp))
      return false;
  }
  return true;
}

std::vector<std::string> split_scalars(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    char32_t cp;
    if (!decode_next(text, pos, cp))
      throw std::invalid_argument("malformed UTF-8 sequence");
    out.emplace_back(text.substr(start, pos - start));
  }
  return out;
}

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!decode_next(text, pos, cp))
      throw std::invalid_argument("malformed UTF-8 sequence");
    out.push_back(cp);
  }
  return out;
}

std::size_t scalar_count(std::string_view text) {
  std::size_t pos = 0, count = 0;
  char32_t cp;
  while (pos < text.size()) {
    if (!decode_next(text, pos, cp))
      throw std::invalid_argument("malformed UTF-8 sequence");
    ++count;
  }
  return count;
}

}  // namespace subword::unicode
