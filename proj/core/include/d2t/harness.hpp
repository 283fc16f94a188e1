#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "d2t/proedit.hpp"
#include "d2t/report.hpp"

namespace d2t {

struct ScoreOptions {
  std::filesystem::path instances_path;
  std::filesystem::path generations_path;
  // When set, outputs are split around this separator and the first and
  // second parts are scored as separate blocks; unset scores whole outputs.
  std::optional<std::string> sep;
  int n_max = 4;
  std::optional<double> fixed_lambda;
  ManySepSecond many_sep_second = ManySepSecond::kFirstSegment;
  bool smooth_bleu = false;
  unsigned threads = 0;
};

// Load, cross-check ids, score. Rendering is the caller's business.
// Warnings from loading are appended to *warnings when given.
ReportSet run_score(const ScoreOptions& options, std::vector<std::string>* warnings = nullptr);

struct PipelineInitOptions {
  std::filesystem::path dir;
  std::filesystem::path instances_path;
  std::string sep = "<SEP>";
  int n_max = 4;
  std::optional<double> fixed_lambda;
  ManySepSecond many_sep_second = ManySepSecond::kFirstSegment;
};

// Create a self-contained pipeline directory: copy the instances file in,
// build the stage-0 dataset (targets doubled around the separator), write
// the manifest. Refuses a directory that already holds a pipeline.
DatasetBuildReport pipeline_init(const PipelineInitOptions& options);

struct MakeDatasetResult {
  int stage_index = 0;
  DatasetBuildReport report;
};

// Build the next stage's dataset from the latest stage's ingested outputs.
MakeDatasetResult pipeline_make_dataset(const std::filesystem::path& dir);

// Validate a raw model outputs file against the instance ids and attach it
// to the latest stage (which must not have outputs yet).
void pipeline_ingest_outputs(const std::filesystem::path& dir,
                             const std::filesystem::path& outputs_file,
                             std::optional<int> stage_index = {});

struct StageScores {
  int stage_index = 0;
  CorpusScore first;
  CorpusScore second;
};

// Score one stage's outputs (default: the latest stage that has outputs)
// and record both parts' scores in the manifest. Re-scoring overwrites.
StageScores pipeline_score_stage(const std::filesystem::path& dir,
                                 std::optional<int> stage_index = {}, unsigned threads = 0);

struct PipelineStatus {
  PipelineManifest manifest;
  // Stages scored so far, counted from stage 0 without gaps.
  std::size_t scored_stages = 0;
  // Stopping-rule verdict over the scored prefix; empty until a stage has
  // been scored.
  std::optional<StopDecision> decision;
  // Unfinished business, one line per unscored stage.
  std::vector<std::string> pending;
};

PipelineStatus pipeline_status(const std::filesystem::path& dir);

}  // namespace d2t
