#include "d2t/proedit.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "d2t/errors.hpp"

namespace d2t {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_sep(std::string_view sep) {
  if (sep.empty()) throw ValidationError("separator must not be empty");
}

std::string quoted(std::string_view text) {
  return "\"" + std::string(text) + "\"";
}

std::string format_f1(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

ordered_json score_to_json(const CorpusScore& score) {
  return ordered_json{{"mean_precision", score.mean_precision},
                      {"mean_recall", score.mean_recall},
                      {"mean_f1", score.mean_f1},
                      {"n_instances", score.n_instances}};
}

CorpusScore score_from_json(const json& value, const std::string& context) {
  for (const char* key : {"mean_precision", "mean_recall", "mean_f1", "n_instances"})
    if (!value.contains(key) || !value[key].is_number())
      throw ValidationError(context + " needs a numeric \"" + key + "\"");
  CorpusScore score;
  score.mean_precision = value["mean_precision"].get<double>();
  score.mean_recall = value["mean_recall"].get<double>();
  score.mean_f1 = value["mean_f1"].get<double>();
  score.n_instances = value["n_instances"].get<std::size_t>();
  return score;
}

void check_history_shape(const StageHistory& history) {
  if (history.stages.empty()) throw ValidationError("stage history is empty");
  for (std::size_t i = 0; i < history.stages.size(); ++i)
    if (history.stages[i].stage_index != static_cast<int>(i))
      throw ValidationError("stage indices must run 0,1,... but entry " + std::to_string(i) +
                            " has stage_index " + std::to_string(history.stages[i].stage_index));
}

}  // namespace

std::string make_repeated_target(std::string_view target, std::string_view sep) {
  check_sep(sep);
  if (target.find(sep) != std::string_view::npos)
    throw ValidationError("target already contains the separator " + quoted(sep));
  std::string combined;
  combined.reserve(target.size() * 2 + sep.size() + 2);
  combined.append(target);
  combined.push_back(' ');
  combined.append(sep);
  combined.push_back(' ');
  combined.append(target);
  return combined;
}

std::string make_stage_target(std::string_view first_part, std::string_view target,
                              std::string_view sep) {
  check_sep(sep);
  if (first_part.find(sep) != std::string_view::npos)
    throw ValidationError("first part already contains the separator " + quoted(sep));
  if (target.find(sep) != std::string_view::npos)
    throw ValidationError("target already contains the separator " + quoted(sep));
  std::string combined;
  combined.reserve(first_part.size() + target.size() + sep.size() + 2);
  combined.append(first_part);
  combined.push_back(' ');
  combined.append(sep);
  combined.push_back(' ');
  combined.append(target);
  return combined;
}

DatasetBuildReport build_stage_dataset(const Corpus& instances,
                                       const std::map<std::string, std::string>& previous_outputs,
                                       int stage_index, std::string_view sep,
                                       const std::filesystem::path& out_path) {
  check_sep(sep);
  if (stage_index < 0)
    throw ValidationError("stage index must be >= 0, got " + std::to_string(stage_index));
  if (stage_index == 0 && !previous_outputs.empty())
    throw ValidationError("stage 0 takes no previous outputs");
  if (stage_index >= 1) {
    std::vector<std::string> missing;
    for (const auto& entry : instances)
      if (!previous_outputs.contains(entry.id)) missing.push_back(entry.id);
    if (!missing.empty()) {
      std::string joined;
      for (const auto& id : missing) {
        if (!joined.empty()) joined += ", ";
        joined += "'" + id + "'";
      }
      throw ValidationError("previous outputs missing for " + std::to_string(missing.size()) +
                            " instance(s): " + joined);
    }
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset file: " + out_path.string());

  DatasetBuildReport report;
  for (const auto& entry : instances) {
    std::string target;
    try {
      if (stage_index == 0) {
        target = make_repeated_target(entry.target, sep);
      } else {
        const SplitOutput parts = split_output(previous_outputs.at(entry.id), sep);
        target = make_stage_target(parts.first, entry.target, sep);
      }
    } catch (const ValidationError&) {
      // The only in-loop failure mode: the raw target collides with the
      // separator.
      ++report.rows_skipped;
      report.skipped_ids.push_back(entry.id);
      continue;
    }
    const ordered_json row{{"id", entry.id}, {"input", entry.linearized_input}, {"target", target}};
    out << row.dump() << '\n';
    ++report.rows_written;
  }
  out.flush();
  if (!out) throw IoError("failed writing dataset file: " + out_path.string());
  return report;
}

ExtractReport extract_parts(const std::map<std::string, std::string>& outputs,
                            std::string_view sep, ManySepSecond many_sep_second) {
  check_sep(sep);
  ExtractReport report;
  for (const auto& [id, output] : outputs) {
    SplitOutput parts = split_output(output, sep, many_sep_second);
    if (parts.sep_count == 0)
      ++report.without_sep;
    else if (parts.sep_count == 1)
      ++report.single_sep;
    else
      ++report.many_sep;
    report.parts.emplace(id, std::move(parts));
  }
  return report;
}

StopDecision should_continue(const StageHistory& history) {
  check_history_shape(history);
  for (const auto& stage : history.stages)
    if (!stage.first_part_scores)
      throw ValidationError("stage " + std::to_string(stage.stage_index) +
                            " has no first-part scores");

  if (history.stages.size() == 1)
    return {true, "stage 0 is the only scored stage; continue"};

  const auto& latest = history.stages.back();
  const auto& previous = history.stages[history.stages.size() - 2];
  const double now = latest.first_part_scores->mean_f1;
  const double before = previous.first_part_scores->mean_f1;
  const std::string comparison = "stage " + std::to_string(latest.stage_index) +
                                 " first-part F1 " + format_f1(now) + (now > before ? " > " : " <= ") +
                                 "stage " + std::to_string(previous.stage_index) +
                                 " first-part F1 " + format_f1(before);
  if (now > before) return {true, comparison + "; continue"};
  return {false, comparison + "; stop"};
}

PipelineManifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + file.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest " + file.string() + ": malformed JSON (" + e.what() + ")");
  }
  const std::string context = "manifest " + file.string();
  if (!root.is_object()) throw ValidationError(context + ": not a JSON object");
  for (const char* key : {"sep", "instances"})
    if (!root.contains(key) || !root[key].is_string())
      throw ValidationError(context + ": needs a string \"" + key + "\"");

  PipelineManifest manifest;
  manifest.sep = root["sep"].get<std::string>();
  if (manifest.sep.empty()) throw ValidationError(context + ": empty separator");
  manifest.instances_path = root["instances"].get<std::string>();
  if (!root.contains("n_max") || !root["n_max"].is_number_integer())
    throw ValidationError(context + ": needs an integer \"n_max\"");
  manifest.n_max = root["n_max"].get<int>();

  if (!root.contains("lambda")) throw ValidationError(context + ": needs \"lambda\"");
  if (root["lambda"].is_string()) {
    if (root["lambda"].get<std::string>() != "auto")
      throw ValidationError(context + ": \"lambda\" must be \"auto\" or a number");
  } else if (root["lambda"].is_number()) {
    manifest.fixed_lambda = root["lambda"].get<double>();
  } else {
    throw ValidationError(context + ": \"lambda\" must be \"auto\" or a number");
  }

  if (!root.contains("many_sep_second") || !root["many_sep_second"].is_string())
    throw ValidationError(context + ": needs a string \"many_sep_second\"");
  const std::string rule = root["many_sep_second"].get<std::string>();
  if (rule == "first")
    manifest.many_sep_second = ManySepSecond::kFirstSegment;
  else if (rule == "second")
    manifest.many_sep_second = ManySepSecond::kSecondSegment;
  else
    throw ValidationError(context + ": \"many_sep_second\" must be \"first\" or \"second\"");

  if (!root.contains("stages") || !root["stages"].is_array())
    throw ValidationError(context + ": needs an array \"stages\"");
  for (const auto& entry : root["stages"]) {
    PipelineStage stage;
    if (!entry.contains("stage_index") || !entry["stage_index"].is_number_integer())
      throw ValidationError(context + ": stage needs an integer \"stage_index\"");
    stage.stage_index = entry["stage_index"].get<int>();
    const std::string stage_context =
        context + ": stage " + std::to_string(stage.stage_index);
    if (!entry.contains("dataset") || !entry["dataset"].is_string())
      throw ValidationError(stage_context + " needs a string \"dataset\"");
    stage.dataset_path = entry["dataset"].get<std::string>();
    if (entry.contains("outputs") && !entry["outputs"].is_null()) {
      if (!entry["outputs"].is_string())
        throw ValidationError(stage_context + " \"outputs\" must be a string");
      stage.outputs_path = entry["outputs"].get<std::string>();
    }
    if (entry.contains("scores") && !entry["scores"].is_null()) {
      const auto& scores = entry["scores"];
      if (!scores.is_object() || !scores.contains("first") || !scores.contains("second"))
        throw ValidationError(stage_context + " \"scores\" needs \"first\" and \"second\"");
      stage.first_part_scores = score_from_json(scores["first"], stage_context + " first scores");
      stage.second_part_scores =
          score_from_json(scores["second"], stage_context + " second scores");
    }
    manifest.history.stages.push_back(std::move(stage));
  }
  check_history_shape(manifest.history);
  return manifest;
}

void save_manifest(const PipelineManifest& manifest, const std::filesystem::path& file) {
  check_history_shape(manifest.history);
  ordered_json stages = ordered_json::array();
  for (const auto& stage : manifest.history.stages) {
    ordered_json entry{{"stage_index", stage.stage_index},
                       {"sep", manifest.sep},
                       {"dataset", stage.dataset_path},
                       {"outputs", nullptr},
                       {"scores", nullptr}};
    if (stage.outputs_path) entry["outputs"] = *stage.outputs_path;
    if (stage.first_part_scores && stage.second_part_scores)
      entry["scores"] = ordered_json{{"first", score_to_json(*stage.first_part_scores)},
                                     {"second", score_to_json(*stage.second_part_scores)}};
    stages.push_back(std::move(entry));
  }
  ordered_json root{{"sep", manifest.sep},
                    {"instances", manifest.instances_path},
                    {"n_max", manifest.n_max},
                    {"lambda", "auto"},
                    {"many_sep_second",
                     manifest.many_sep_second == ManySepSecond::kSecondSegment ? "second" : "first"},
                    {"stages", std::move(stages)}};
  if (manifest.fixed_lambda) root["lambda"] = *manifest.fixed_lambda;

  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + file.string());
  out << root.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing manifest: " + file.string());
}

}  // namespace d2t
