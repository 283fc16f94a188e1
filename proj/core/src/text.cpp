#include "d2t/text.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "d2t/errors.hpp"

namespace d2t {
namespace {

// Decode one UTF-8 code point starting at `pos`. Malformed bytes come back
// as single-byte pseudo code points above the Unicode range, which keeps
// them opaque: never whitespace, copied through verbatim.
std::pair<char32_t, std::size_t> decode_utf8(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) return {lead, 1};
  std::size_t length = 0;
  char32_t code_point = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    code_point = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    code_point = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    code_point = lead & 0x07;
  } else {
    return {0x110000u + lead, 1};
  }
  if (pos + length > text.size()) return {0x110000u + lead, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) return {0x110000u + lead, 1};
    code_point = (code_point << 6) | (cont & 0x3F);
  }
  return {code_point, length};
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

bool is_unicode_whitespace(char32_t code_point) {
  switch (code_point) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return code_point >= 0x2000 && code_point <= 0x200A;
  }
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::string current;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto [code_point, length] = decode_utf8(text, pos);
    if (is_unicode_whitespace(code_point)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      // Continuation bytes are >= 0x80 and unaffected by ascii_lower, so
      // lowering per byte is safe inside multi-byte sequences.
      for (std::size_t i = 0; i < length; ++i) current.push_back(ascii_lower(text[pos + i]));
    }
    pos += length;
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string joined;
  for (const auto& token : tokens) {
    if (!joined.empty()) joined.push_back(' ');
    joined += token;
  }
  return joined;
}

std::string_view trim_whitespace(std::string_view text) {
  std::size_t begin = text.size();
  std::size_t end = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto [code_point, length] = decode_utf8(text, pos);
    if (!is_unicode_whitespace(code_point)) {
      if (begin == text.size()) begin = pos;
      end = pos + length;
    }
    pos += length;
  }
  if (begin >= end) return {};
  return text.substr(begin, end - begin);
}

std::int64_t NGramCounts::total() const {
  std::int64_t sum = 0;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

NGramCounts ngram_counts(const TokenSeq& tokens, int order) {
  if (order < 1) throw ValidationError("n-gram order must be >= 1, got " + std::to_string(order));
  NGramCounts result;
  result.order = order;
  const auto n = static_cast<std::size_t>(order);
  if (tokens.size() < n) return result;
  std::string key;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    key.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key.push_back(' ');
      key += tokens[i + j];
    }
    ++result.counts[key];
  }
  return result;
}

std::vector<std::string_view> split_ngram_key(std::string_view key) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t space = key.find(' ', pos);
    if (space == std::string_view::npos) {
      if (pos < key.size()) tokens.push_back(key.substr(pos));
      break;
    }
    tokens.push_back(key.substr(pos, space - pos));
    pos = space + 1;
  }
  return tokens;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> previous(b.size() + 1, 0);
  std::vector<std::size_t> current(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      current[j] = a[i - 1] == b[j - 1] ? previous[j - 1] + 1
                                        : std::max(previous[j], current[j - 1]);
    }
    std::swap(previous, current);
  }
  return previous[b.size()];
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw ValidationError("geometric mean of an empty list");
  double product = 1.0;
  for (const double value : values) {
    if (value < 0.0 || value > 1.0)
      throw ValidationError("geometric mean input outside [0,1]: " + std::to_string(value));
    if (value == 0.0) return 0.0;
    product *= value;
  }
  // pow(x, 1.0) == x under IEEE rules, so a single value comes back exact.
  return std::pow(product, 1.0 / static_cast<double>(values.size()));
}

}  // namespace d2t
