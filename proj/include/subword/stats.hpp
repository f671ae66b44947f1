#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subword/core.hpp"
#include "subword/metrics.hpp"

namespace subword {

// One segmentation scheme of the side-by-side corpus comparison. Schemes
// that need external segmenters are fed as pre-segmented files instead.
struct Scheme {
  enum class Kind { None, CharNgram, Bpe, PreSegmented };

  Kind kind = Kind::None;
  std::string name;

  // CharNgram
  std::uint32_t n = 1;
  std::uint32_t shortlist_size = 0;

  // Bpe
  MergeTable merges;

  // PreSegmented: already-segmented train/test lines
  std::vector<std::string> train_lines;
  std::vector<std::string> test_lines;
};

struct SchemeResult {
  std::string name;
  CorpusStatistics stats;
};

// Token/type/UNK accounting per scheme, in input order.
std::vector<SchemeResult> compare_schemes(const std::vector<std::string>& train,
                                          const std::vector<std::string>& test,
                                          const std::vector<Scheme>& schemes);

std::string format_scheme_table(const std::vector<SchemeResult>& rows, bool tab_separated);

}  // namespace subword
