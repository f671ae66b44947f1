#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "subword/bpe_learn.hpp"
#include "subword/stats.hpp"

using namespace subword;

namespace {

Scheme none_scheme() {
  Scheme s;
  s.kind = Scheme::Kind::None;
  s.name = "none";
  return s;
}

Scheme ngram_scheme(std::uint32_t n, std::uint32_t k = 0) {
  Scheme s;
  s.kind = Scheme::Kind::CharNgram;
  s.n = n;
  s.shortlist_size = k;
  s.name = "char-" + std::to_string(n) + "gram";
  return s;
}

Scheme bpe_scheme(MergeTable table) {
  Scheme s;
  s.kind = Scheme::Kind::Bpe;
  s.merges = std::move(table);
  s.name = "bpe";
  return s;
}

}  // namespace

TEST_CASE("the none scheme reports raw word counts") {
  const std::vector<std::string> train{"a b a", "c"};
  const std::vector<std::string> test{"a d"};
  const auto rows = compare_schemes(train, test, {none_scheme()});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].stats.tokens == 4);
  CHECK(rows[0].stats.types == 3);
  CHECK(rows[0].stats.unknown == 1);
}

TEST_CASE("BPE has no unknowns when test equals training") {
  std::mt19937 rng(404);
  const auto train = testutil::random_lines(rng, 15, 5, 8, testutil::ascii_alphabet(6));
  LearnConfig cfg;
  cfg.num_merges = 12;
  cfg.min_frequency = 1;
  const auto learned = learn_bpe_indexed(build_word_frequency_table(train), cfg);
  const auto rows = compare_schemes(train, train, {bpe_scheme(learned.table)});
  CHECK(rows[0].stats.unknown == 0);
}

TEST_CASE("an unseen test character shows up as unknown under BPE") {
  const std::vector<std::string> train{"low lower low"};
  LearnConfig cfg;
  cfg.num_merges = 4;
  cfg.min_frequency = 1;
  const auto learned = learn_bpe_indexed(build_word_frequency_table(train), cfg);
  const auto rows = compare_schemes(train, {"löw"}, {bpe_scheme(learned.table)});
  CHECK(rows[0].stats.unknown >= 1);
}

TEST_CASE("fully-absorbed symbols count as unknown, like the safeguard case") {
  // Training merges every occurrence of "abc" into "abcd", so the test-only
  // prefix "abc" appears as a unit the training text never produced.
  const std::vector<std::string> train{"abcd abcd abcd"};
  LearnConfig cfg;
  cfg.num_merges = 10;
  cfg.min_frequency = 1;
  const auto learned = learn_bpe_indexed(build_word_frequency_table(train), cfg);
  const auto rows = compare_schemes(train, {"abc"}, {bpe_scheme(learned.table)});
  CHECK(rows[0].stats.unknown >= 1);
}

TEST_CASE("token counts order none <= bpe <= unigram on any corpus") {
  std::mt19937 rng(123);
  for (int i = 0; i < 10; ++i) {
    const auto train = testutil::random_lines(rng, 10, 5, 9, testutil::ascii_alphabet(6));
    if (build_word_frequency_table(train).empty())
      continue;
    LearnConfig cfg;
    cfg.num_merges = 1 + static_cast<std::uint32_t>(rng() % 20);
    cfg.min_frequency = 1;
    const auto learned = learn_bpe_indexed(build_word_frequency_table(train), cfg);
    const auto rows = compare_schemes(
        train, train, {none_scheme(), bpe_scheme(learned.table), ngram_scheme(1)});
    CHECK(rows[0].stats.tokens <= rows[1].stats.tokens);
    CHECK(rows[1].stats.tokens <= rows[2].stats.tokens);
  }
}

TEST_CASE("type counts reverse the token ordering once the vocabulary dwarfs the charset") {
  std::mt19937 rng(77);
  std::vector<std::string> train;
  for (int i = 0; i < 60; ++i) {
    std::string line;
    for (int w = 0; w < 4; ++w) {
      if (w)
        line += ' ';
      line += testutil::random_word(rng, 10, testutil::ascii_alphabet(6));
    }
    train.push_back(std::move(line));
  }
  LearnConfig cfg;
  cfg.num_merges = 12;
  cfg.min_frequency = 1;
  const auto learned = learn_bpe_indexed(build_word_frequency_table(train), cfg);
  const auto rows = compare_schemes(
      train, train, {none_scheme(), bpe_scheme(learned.table), ngram_scheme(1)});
  CHECK(rows[0].stats.types >= rows[1].stats.types);
  CHECK(rows[1].stats.types >= rows[2].stats.types);
}

TEST_CASE("unigram vs trigram trade tokens against types") {
  std::mt19937 rng(321);
  const auto train = testutil::random_lines(rng, 20, 6, 10, testutil::ascii_alphabet(8));
  const auto rows = compare_schemes(train, train, {ngram_scheme(1), ngram_scheme(3)});
  CHECK(rows[1].stats.tokens < rows[0].stats.tokens);
  CHECK(rows[1].stats.types > rows[0].stats.types);
}

TEST_CASE("pre-segmented schemes pass through") {
  Scheme preseg;
  preseg.kind = Scheme::Kind::PreSegmented;
  preseg.name = "external";
  preseg.train_lines = {"seg@@ mented units"};
  preseg.test_lines = {"novel units"};
  const auto rows = compare_schemes({"ignored"}, {"ignored"}, {preseg});
  CHECK(rows[0].stats.tokens == 3);
  CHECK(rows[0].stats.types == 3);
  CHECK(rows[0].stats.unknown == 1);
}

TEST_CASE("table formatting") {
  std::vector<SchemeResult> rows{{"none", {4, 3, 1}}, {"bpe", {6, 4, 0}}};
  CHECK(format_scheme_table(rows, true) ==
        "segmentation\ttokens\ttypes\tunk\n"
        "none\t4\t3\t1\n"
        "bpe\t6\t4\t0\n");
  const std::string pretty = format_scheme_table(rows, false);
  CHECK(pretty.find("#tokens") != std::string::npos);
  CHECK(pretty.find("none") != std::string::npos);
}
