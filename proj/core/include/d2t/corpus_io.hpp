#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "d2t/table.hpp"

namespace d2t {

// One row of an instances file. Raw strings are kept alongside the parsed
// table: scoring tokenizes on demand and the dataset pipeline needs the
// untouched target text.
struct CorpusEntry {
  std::string id;
  Table table;
  // The flat form the row came with, or the canonical linearization when
  // the row carried a structured table.
  std::string linearized_input;
  std::string target;
};

using Corpus = std::vector<CorpusEntry>;

struct LoadResult {
  Corpus entries;
  // Non-fatal oddities worth surfacing, e.g. a row carrying both table
  // forms.
  std::vector<std::string> warnings;
};

// Read a JSONL instances file. Every non-blank line is an object with "id"
// and "target" plus either "table" (a [{"attribute","value"}] array) or
// "linearized_table" (the flat bracket form). The structured form wins if
// both are present. Targets must have at least one token, tables at least
// one record, ids must be unique. Errors name the 1-based line.
LoadResult load_instances(const std::filesystem::path& file);

// Read a JSONL file of {"id","output"} rows into an id-keyed map. Outputs
// may be empty strings; ids must be unique.
std::map<std::string, std::string> load_generations(const std::filesystem::path& file);

}  // namespace d2t
