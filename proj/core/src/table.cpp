#include "d2t/table.hpp"

#include <algorithm>

#include "d2t/errors.hpp"

namespace d2t {

TokenSeq tokenize_attribute(std::string_view name) {
  std::string spaced(name);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  return tokenize(spaced);
}

Table parse_linearized_table(std::string_view text) {
  Table table;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find_first_of("[]", pos);
    if (open == std::string_view::npos) break;  // attribute-only tail, dropped
    if (text[open] == ']') throw ParseError("unmatched ']'", open);
    const std::size_t close = text.find_first_of("[]", open + 1);
    if (close == std::string_view::npos) throw ParseError("unclosed '['", open);
    if (text[close] == '[') throw ParseError("nested '[' inside a value", close);
    TokenSeq value = tokenize(text.substr(open + 1, close - open - 1));
    if (value.empty()) throw ParseError("empty value inside brackets", open);
    table.records.push_back({tokenize_attribute(text.substr(pos, open - pos)), std::move(value)});
    pos = close + 1;
  }
  return table;
}

std::string linearize(const Table& table) {
  std::string flat;
  for (const auto& record : table.records) {
    if (!flat.empty()) flat.push_back(' ');
    flat += join_tokens(record.attribute);
    flat.push_back('[');
    flat += join_tokens(record.value);
    flat.push_back(']');
  }
  return flat;
}

TokenSet table_token_set(const Table& table) {
  TokenSet tokens;
  for (const auto& record : table.records) {
    tokens.insert(record.attribute.begin(), record.attribute.end());
    tokens.insert(record.value.begin(), record.value.end());
  }
  return tokens;
}

}  // namespace d2t
