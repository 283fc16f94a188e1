#include "d2t/corpus_io.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "d2t/errors.hpp"
#include "d2t/text.hpp"

namespace d2t {
namespace {

using nlohmann::json;

std::string where(const std::filesystem::path& file, std::size_t line_no) {
  return file.filename().string() + " line " + std::to_string(line_no) + ": ";
}

json parse_row(const std::string& line, const std::filesystem::path& file, std::size_t line_no) {
  json row;
  try {
    row = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(where(file, line_no) + "malformed JSON (" + e.what() + ")");
  }
  if (!row.is_object()) throw ValidationError(where(file, line_no) + "row is not a JSON object");
  return row;
}

std::string require_string(const json& row, const char* key, const std::filesystem::path& file,
                           std::size_t line_no) {
  if (!row.contains(key))
    throw ValidationError(where(file, line_no) + "missing \"" + key + "\"");
  if (!row[key].is_string())
    throw ValidationError(where(file, line_no) + "\"" + key + "\" is not a string");
  return row[key].get<std::string>();
}

Table table_from_records(const json& records, const std::filesystem::path& file,
                         std::size_t line_no) {
  if (!records.is_array())
    throw ValidationError(where(file, line_no) + "\"table\" is not an array");
  Table table;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    const std::string at = "record " + std::to_string(i) + " ";
    if (!record.is_object())
      throw ValidationError(where(file, line_no) + at + "is not an object");
    if (!record.contains("value") || !record["value"].is_string())
      throw ValidationError(where(file, line_no) + at + "needs a string \"value\"");
    std::string attribute;
    if (record.contains("attribute")) {
      if (!record["attribute"].is_string())
        throw ValidationError(where(file, line_no) + at + "\"attribute\" is not a string");
      attribute = record["attribute"].get<std::string>();
    }
    TokenSeq value = tokenize(record["value"].get<std::string>());
    if (value.empty())
      throw ValidationError(where(file, line_no) + at + "has an empty value");
    table.records.push_back({tokenize_attribute(attribute), std::move(value)});
  }
  return table;
}

}  // namespace

LoadResult load_instances(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open instances file: " + file.string());

  LoadResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_whitespace(line).empty()) continue;
    const json row = parse_row(line, file, line_no);

    CorpusEntry entry;
    entry.id = require_string(row, "id", file, line_no);
    if (entry.id.empty()) throw ValidationError(where(file, line_no) + "\"id\" is empty");
    if (!seen_ids.insert(entry.id).second)
      throw ValidationError(where(file, line_no) + "duplicate id '" + entry.id + "'");

    entry.target = require_string(row, "target", file, line_no);
    if (tokenize(entry.target).empty())
      throw ValidationError(where(file, line_no) + "target has no tokens");

    const bool has_records = row.contains("table");
    const bool has_flat = row.contains("linearized_table");
    if (!has_records && !has_flat)
      throw ValidationError(where(file, line_no) +
                            "needs \"table\" or \"linearized_table\"");
    if (has_records) {
      entry.table = table_from_records(row["table"], file, line_no);
      entry.linearized_input = linearize(entry.table);
      if (has_flat)
        result.warnings.push_back(where(file, line_no) +
                                  "both table forms present; using \"table\"");
    } else {
      if (!row["linearized_table"].is_string())
        throw ValidationError(where(file, line_no) + "\"linearized_table\" is not a string");
      entry.linearized_input = row["linearized_table"].get<std::string>();
      try {
        entry.table = parse_linearized_table(entry.linearized_input);
      } catch (const ParseError& e) {
        throw ValidationError(where(file, line_no) + e.what());
      }
    }
    if (entry.table.records.empty())
      throw ValidationError(where(file, line_no) + "table has no records");

    result.entries.push_back(std::move(entry));
  }
  return result;
}

std::map<std::string, std::string> load_generations(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open generations file: " + file.string());

  std::map<std::string, std::string> outputs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_whitespace(line).empty()) continue;
    const json row = parse_row(line, file, line_no);
    std::string id = require_string(row, "id", file, line_no);
    if (id.empty()) throw ValidationError(where(file, line_no) + "\"id\" is empty");
    std::string output = require_string(row, "output", file, line_no);
    if (!outputs.emplace(std::move(id), std::move(output)).second)
      throw ValidationError(where(file, line_no) + "duplicate id '" +
                            row["id"].get<std::string>() + "'");
  }
  return outputs;
}

}  // namespace d2t
