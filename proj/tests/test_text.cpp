#include <doctest.h>

#include <algorithm>
#include <random>

#include "d2t/errors.hpp"
#include "d2t/text.hpp"
#include "parent_oracle.hpp"
#include "test_fixtures.hpp"

using namespace d2t;

TEST_CASE("tokenize lowercases and splits on whitespace") {
  CHECK(tokenize("The cat The cat") == TokenSeq{"the", "cat", "the", "cat"});
  CHECK(tokenize("  spaced\tout\nlines ") == TokenSeq{"spaced", "out", "lines"});
  CHECK(tokenize("") == TokenSeq{});
  CHECK(tokenize(" \t\r\n ") == TokenSeq{});
}

TEST_CASE("tokenize keeps punctuation attached") {
  CHECK(tokenize("Herculaneum, Missouri.") == TokenSeq{"herculaneum,", "missouri."});
  CHECK(tokenize("3,468 people") == TokenSeq{"3,468", "people"});
}

TEST_CASE("tokenize splits on non-ASCII whitespace") {
  CHECK(tokenize("a b") == TokenSeq{"a", "b"});          // no-break space
  CHECK(tokenize("a　b") == TokenSeq{"a", "b"});          // ideographic space
  CHECK(tokenize("a b c") == TokenSeq{"a", "b", "c"});
  CHECK(tokenize("En–Dash") == TokenSeq{"en–dash"});  // dash is not whitespace
}

TEST_CASE("tokenize leaves non-ASCII bytes intact") {
  CHECK(tokenize("Ķēniņš") == TokenSeq{"Ķēniņš"});
  CHECK(tokenize("723 – 732") == TokenSeq{"723", "–", "732"});
  // Invalid UTF-8 bytes are opaque token content, never separators.
  const std::string broken = std::string("a") + char(0xFF) + "b c";
  CHECK(tokenize(broken) == TokenSeq{std::string("a") + char(0xFF) + "b", "c"});
}

TEST_CASE("tokenize is idempotent through join_tokens") {
  std::mt19937 rng(7001);
  const auto vocab = testing::small_vocab(6);
  for (int i = 0; i < 200; ++i) {
    const TokenSeq tokens = testing::random_tokens(rng, vocab, 0, 10);
    CHECK(tokenize(join_tokens(tokens)) == tokens);
  }
  CHECK(tokenize(join_tokens(tokenize("  Mixed   CASE text "))) ==
        tokenize("  Mixed   CASE text "));
}

TEST_CASE("trim_whitespace strips both ends only") {
  CHECK(trim_whitespace("  a b  ") == "a b");
  CHECK(trim_whitespace(" x ") == "x");
  CHECK(trim_whitespace("   ") == "");
  CHECK(trim_whitespace("") == "");
  CHECK(trim_whitespace("solid") == "solid");
}

TEST_CASE("ngram_counts builds order-n multisets") {
  const TokenSeq tokens{"a", "b", "a", "b"};
  const NGramCounts bigrams = ngram_counts(tokens, 2);
  CHECK(bigrams.order == 2);
  CHECK(bigrams.counts.size() == 2);
  CHECK(bigrams.counts.at("a b") == 2);
  CHECK(bigrams.counts.at("b a") == 1);
  CHECK(bigrams.total() == 3);

  CHECK(ngram_counts({"a"}, 2).counts.empty());
  CHECK(ngram_counts({}, 1).counts.empty());
  CHECK_THROWS_AS(ngram_counts(tokens, 0), ValidationError);
}

TEST_CASE("ngram_counts totals follow the occurrence law") {
  std::mt19937 rng(7002);
  const auto vocab = testing::small_vocab(4);
  for (int i = 0; i < 100; ++i) {
    const TokenSeq tokens = testing::random_tokens(rng, vocab, 0, 12);
    for (int n = 1; n <= 5; ++n) {
      const NGramCounts grams = ngram_counts(tokens, n);
      const std::int64_t expected =
          tokens.size() + 1 >= static_cast<std::size_t>(n)
              ? static_cast<std::int64_t>(tokens.size()) - n + 1
              : 0;
      CHECK(grams.total() == std::max<std::int64_t>(expected, 0));
      for (const auto& [key, count] : grams.counts)
        CHECK(split_ngram_key(key).size() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("split_ngram_key inverts the key join") {
  CHECK(split_ngram_key("a b c") == std::vector<std::string_view>{"a", "b", "c"});
  CHECK(split_ngram_key("single") == std::vector<std::string_view>{"single"});
}

TEST_CASE("lcs_length on fixed pairs") {
  CHECK(lcs_length({"a", "b", "c"}, {"a", "x", "c"}) == 2);
  CHECK(lcs_length({}, {"a"}) == 0);
  CHECK(lcs_length({"a"}, {}) == 0);
  CHECK(lcs_length({"a", "b", "c"}, {"a", "b", "c"}) == 3);
  CHECK(lcs_length({"x"}, {"y"}) == 0);
}

TEST_CASE("lcs_length matches the exhaustive oracle") {
  // Every pair over a two-token alphabet up to length 4.
  std::vector<TokenSeq> all;
  all.push_back({});
  for (std::size_t length = 1; length <= 4; ++length) {
    const std::size_t combos = std::size_t{1} << length;
    for (std::size_t bits = 0; bits < combos; ++bits) {
      TokenSeq tokens;
      for (std::size_t i = 0; i < length; ++i)
        tokens.push_back((bits >> i) & 1 ? "a" : "b");
      all.push_back(std::move(tokens));
    }
  }
  for (const auto& left : all)
    for (const auto& right : all)
      CHECK(lcs_length(left, right) == testing::oracle_lcs(left, right));

  std::mt19937 rng(7003);
  const auto vocab = testing::small_vocab(3);
  for (int i = 0; i < 500; ++i) {
    const TokenSeq left = testing::random_tokens(rng, vocab, 0, 8);
    const TokenSeq right = testing::random_tokens(rng, vocab, 0, 8);
    CHECK(lcs_length(left, right) == testing::oracle_lcs(left, right));
    CHECK(lcs_length(left, right) == lcs_length(right, left));
    CHECK(lcs_length(left, right) <= std::min(left.size(), right.size()));
  }
}

TEST_CASE("geometric_mean on fixed inputs") {
  const double two[] = {0.25, 1.0};
  CHECK(geometric_mean(two) == 0.5);
  const double with_zero[] = {0.0, 0.9, 1.0};
  CHECK(geometric_mean(with_zero) == 0.0);
  const double ones[] = {1.0, 1.0, 1.0, 1.0};
  CHECK(geometric_mean(ones) == 1.0);
}

TEST_CASE("geometric_mean of a single value is that value") {
  std::mt19937 rng(7004);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double value = unit(rng);
    const double one[] = {value};
    CHECK(geometric_mean(one) == value);
  }
}

TEST_CASE("geometric_mean stays between min and max") {
  std::mt19937 rng(7005);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values;
    for (int k = 0; k < 4; ++k) values.push_back(unit(rng));
    const double mean = geometric_mean(values);
    CHECK(mean >= *std::min_element(values.begin(), values.end()) - 1e-12);
    CHECK(mean <= *std::max_element(values.begin(), values.end()) + 1e-12);
  }
}

TEST_CASE("geometric_mean rejects bad input") {
  CHECK_THROWS_AS(geometric_mean({}), ValidationError);
  const double too_big[] = {1.5};
  CHECK_THROWS_AS(geometric_mean(too_big), ValidationError);
  const double negative[] = {-0.1};
  CHECK_THROWS_AS(geometric_mean(negative), ValidationError);
}
