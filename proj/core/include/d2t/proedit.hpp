#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2t/corpus_io.hpp"
#include "d2t/parent.hpp"
#include "d2t/split.hpp"

namespace d2t {

// Seed-stage target shape: the same sentence on both sides of the
// separator, "t" -> "t <SEP> t". Rejects targets already containing the
// separator.
std::string make_repeated_target(std::string_view target, std::string_view sep);

// Later-stage target shape: the previous stage's first part prepended to
// the untouched target, "first <SEP> t".
std::string make_stage_target(std::string_view first_part, std::string_view target,
                              std::string_view sep);

struct DatasetBuildReport {
  std::size_t rows_written = 0;
  // Rows whose target already contained the separator; skipped rather than
  // silently mangled.
  std::size_t rows_skipped = 0;
  std::vector<std::string> skipped_ids;
};

// Write one JSONL row {"id","input","target"} per instance, in input order.
// Stage 0 doubles the target; stage k >= 1 takes the first part of the
// previous stage's raw output for every id. Deterministic: the same inputs
// produce a byte-identical file.
DatasetBuildReport build_stage_dataset(const Corpus& instances,
                                       const std::map<std::string, std::string>& previous_outputs,
                                       int stage_index, std::string_view sep,
                                       const std::filesystem::path& out_path);

struct ExtractReport {
  std::map<std::string, SplitOutput> parts;
  // Outputs by separator occurrence count.
  std::size_t without_sep = 0;
  std::size_t single_sep = 0;
  std::size_t many_sep = 0;
};

// Split every raw output into its first/second parts.
ExtractReport extract_parts(const std::map<std::string, std::string>& outputs,
                            std::string_view sep,
                            ManySepSecond many_sep_second = ManySepSecond::kFirstSegment);

struct PipelineStage {
  int stage_index = 0;
  // Paths are relative to the pipeline directory.
  std::string dataset_path;
  std::optional<std::string> outputs_path;
  std::optional<CorpusScore> first_part_scores;
  std::optional<CorpusScore> second_part_scores;
};

struct StageHistory {
  // Consecutive stage_index values starting at 0.
  std::vector<PipelineStage> stages;
};

struct StopDecision {
  bool keep_going = false;
  std::string reason;
};

// Strict-improvement stopping rule on first-part corpus F1, compared at
// full precision. A history of one scored stage always continues; after
// that the pipeline goes on only while the latest stage strictly beats the
// one before it. Every stage in the history must carry first-part scores.
StopDecision should_continue(const StageHistory& history);

// On-disk state of a pipeline directory.
struct PipelineManifest {
  std::string sep = "<SEP>";
  std::string instances_path = "instances.jsonl";
  int n_max = 4;
  std::optional<double> fixed_lambda;  // unset = per-instance heuristic
  ManySepSecond many_sep_second = ManySepSecond::kFirstSegment;
  StageHistory history;
};

// Manifest round trip. Scores are stored at full precision: the stopping
// rule must see exactly what the scorer produced.
PipelineManifest load_manifest(const std::filesystem::path& file);
void save_manifest(const PipelineManifest& manifest, const std::filesystem::path& file);

}  // namespace d2t
