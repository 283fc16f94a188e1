#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "d2t/text.hpp"

namespace d2t {

// One attribute/value cell of a structured input. The value always holds at
// least one token; the attribute may be empty.
struct TableRecord {
  TokenSeq attribute;
  TokenSeq value;
};

// Ordered list of records. Order and duplicates are preserved: record-level
// recall averages over records, so merging duplicates would change scores.
struct Table {
  std::vector<TableRecord> records;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

// Token set with heterogeneous lookup, so string_view probes don't allocate.
using TokenSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// Tokenize an attribute name; underscores separate words the same way
// spaces do ("Page_Title" -> ["page", "title"]).
TokenSeq tokenize_attribute(std::string_view name);

// Parse the flat `Attribute[value]` rendering of a table, e.g.
//   "Page_Title[Hudson Line] Zone[Harlem / New Haven Lines diverge]"
// One record per bracket group, in textual order. The text between a
// closing bracket and the next opening one names the next attribute.
// Trailing text with no bracket group of its own is dropped. Values must be
// non-empty and bracket-free; violations raise ParseError with the byte
// offset of the problem.
Table parse_linearized_table(std::string_view text);

// Canonical flat rendering: `attribute[value]` groups joined by single
// spaces, all tokens normalized. parse(linearize(t)) preserves t's tokens.
std::string linearize(const Table& table);

// Union of every attribute and value token. This is the support set of the
// word-overlap entailment model.
TokenSet table_token_set(const Table& table);

}  // namespace d2t
