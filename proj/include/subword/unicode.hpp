#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subword::unicode {

void append_utf8(char32_t cp, std::string& out);

std::string encode_utf8(char32_t cp);

// Decodes the scalar value starting at text[pos]. Returns false on malformed
// input (truncated, overlong, surrogate, out of range); on success stores the
// scalar in cp and advances pos past it.
bool decode_next(std::string_view text, std::size_t& pos, char32_t& cp);

bool is_valid_utf8(std::string_view text);

// One string per Unicode scalar value. Throws subword::FormatError-compatible
// std::invalid_argument on malformed UTF-8.
std::vector<std::string> split_scalars(std::string_view text);

std::vector<char32_t> decode(std::string_view text);

std::size_t scalar_count(std::string_view text);

}  // namespace subword::unicode
