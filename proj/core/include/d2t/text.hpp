#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace d2t {

// A tokenized text. Tokens are never empty and never contain whitespace,
// so joining them with single spaces is lossless.
using TokenSeq = std::vector<std::string>;

// Lowercase the text and split it on Unicode whitespace. Nothing else: no
// punctuation splitting, no stemming, so "2010," and "2010" are different
// tokens. Lowercasing is ASCII-only; non-ASCII bytes pass through intact.
// Every score in this library counts tokens produced by this function.
TokenSeq tokenize(std::string_view text);

// Single-space join. tokenize(join_tokens(tokenize(s))) == tokenize(s).
std::string join_tokens(const TokenSeq& tokens);

// The whitespace class used by tokenize: the Unicode code points with
// White_Space=yes (space, tabs, line breaks, NBSP, the U+2000 block, etc).
bool is_unicode_whitespace(char32_t code_point);

// View of `text` with leading and trailing whitespace removed, using the
// same whitespace class as tokenize.
std::string_view trim_whitespace(std::string_view text);

// Multiset of the contiguous n-grams of one order. Keys are the n tokens
// joined with single spaces, which is injective because tokens cannot
// contain whitespace.
struct NGramCounts {
  int order = 1;
  std::unordered_map<std::string, std::int64_t> counts;

  // Number of n-gram occurrences, i.e. max(0, len - order + 1).
  std::int64_t total() const;
};

// All contiguous n-grams of `tokens`. Empty when the sequence is shorter
// than `order`. Rejects order < 1.
NGramCounts ngram_counts(const TokenSeq& tokens, int order);

// Split an n-gram key back into its tokens. Views point into `key`.
std::vector<std::string_view> split_ngram_key(std::string_view key);

// Token-level longest common subsequence length.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// (v1 * ... * vk)^(1/k) for values in [0,1]. A zero annihilates the whole
// mean. Rejects an empty list and out-of-range values.
double geometric_mean(std::span<const double> values);

}  // namespace d2t
