#include "d2t/harness.hpp"

#include <set>
#include <utility>

#include "d2t/errors.hpp"

namespace d2t {
namespace {

namespace fs = std::filesystem;

void check_score_knobs(int n_max, const std::optional<double>& fixed_lambda) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1, got " + std::to_string(n_max));
  if (fixed_lambda && (*fixed_lambda < 0.0 || *fixed_lambda > 1.0))
    throw ValidationError("fixed lambda must lie in [0,1], got " +
                          std::to_string(*fixed_lambda));
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string joined;
  for (const auto& id : ids) {
    if (!joined.empty()) joined += ", ";
    joined += "'" + id + "'";
  }
  return joined;
}

template <typename Value>
void check_id_alignment(const Corpus& corpus, const std::map<std::string, Value>& outputs) {
  std::set<std::string_view> ids;
  for (const auto& entry : corpus) ids.insert(entry.id);
  std::vector<std::string> missing;
  for (const auto& entry : corpus)
    if (!outputs.contains(entry.id)) missing.push_back(entry.id);
  std::vector<std::string> unexpected;
  for (const auto& [id, value] : outputs)
    if (!ids.contains(id)) unexpected.push_back(id);
  if (missing.empty() && unexpected.empty()) return;
  std::string message = "output ids do not match instance ids";
  if (!missing.empty())
    message += "; missing " + std::to_string(missing.size()) + ": " + join_ids(missing);
  if (!unexpected.empty())
    message += "; unexpected " + std::to_string(unexpected.size()) + ": " + join_ids(unexpected);
  throw ValidationError(message);
}

std::vector<Instance> to_instances(const Corpus& corpus) {
  std::vector<Instance> instances;
  instances.reserve(corpus.size());
  for (const auto& entry : corpus)
    instances.push_back({entry.id, entry.table, tokenize(entry.target), {}});
  return instances;
}

EvalReport score_block(std::string label, const std::vector<Instance>& instances,
                       const std::map<std::string, TokenSeq>& generations,
                       const ParentConfig& config, bool smooth_bleu) {
  EvalReport report;
  report.label = std::move(label);
  report.parent = parent_corpus(instances, generations, config);

  std::vector<std::pair<TokenSeq, TokenSeq>> pairs;
  pairs.reserve(instances.size());
  double generation_tokens = 0.0;
  double reference_tokens = 0.0;
  for (const auto& instance : instances) {
    const TokenSeq& generation = generations.at(instance.id);
    generation_tokens += static_cast<double>(generation.size());
    reference_tokens += static_cast<double>(instance.reference.size());
    pairs.emplace_back(generation, instance.reference);
  }
  BleuConfig bleu_config;
  bleu_config.smooth = smooth_bleu;
  report.bleu = corpus_bleu(pairs, bleu_config);

  const auto count = static_cast<double>(instances.size());
  report.mean_generation_tokens = generation_tokens / count;
  report.mean_reference_tokens = reference_tokens / count;
  return report;
}

fs::path manifest_file(const fs::path& dir) { return dir / "manifest.json"; }

std::string stage_file(int stage_index, const char* kind) {
  return "stage" + std::to_string(stage_index) + "_" + kind + ".jsonl";
}

PipelineManifest read_pipeline(const fs::path& dir) {
  if (!fs::exists(manifest_file(dir)))
    throw ValidationError("no pipeline at " + dir.string() + " (missing manifest.json)");
  return load_manifest(manifest_file(dir));
}

Corpus read_pipeline_corpus(const fs::path& dir, const PipelineManifest& manifest) {
  LoadResult loaded = load_instances(dir / manifest.instances_path);
  if (loaded.entries.empty())
    throw ValidationError("pipeline instances file has no rows: " +
                          (dir / manifest.instances_path).string());
  return std::move(loaded.entries);
}

void copy_into(const fs::path& source, const fs::path& destination) {
  std::error_code ec;
  if (fs::exists(destination, ec) && fs::equivalent(source, destination, ec)) return;
  fs::copy_file(source, destination, fs::copy_options::overwrite_existing, ec);
  if (ec)
    throw IoError("cannot copy " + source.string() + " to " + destination.string() + ": " +
                  ec.message());
}

}  // namespace

ReportSet run_score(const ScoreOptions& options, std::vector<std::string>* warnings) {
  check_score_knobs(options.n_max, options.fixed_lambda);
  if (options.sep && options.sep->empty())
    throw ValidationError("separator must not be empty");

  LoadResult loaded = load_instances(options.instances_path);
  if (warnings) *warnings = loaded.warnings;
  if (loaded.entries.empty())
    throw ValidationError("instances file has no rows: " + options.instances_path.string());
  const auto raw_outputs = load_generations(options.generations_path);
  check_id_alignment(loaded.entries, raw_outputs);

  const std::vector<Instance> instances = to_instances(loaded.entries);
  ParentConfig config;
  config.n_max = options.n_max;
  config.fixed_lambda = options.fixed_lambda;
  config.threads = options.threads;

  ReportSet set;
  set.conventions = {options.n_max, options.fixed_lambda, options.sep,
                     options.many_sep_second, options.smooth_bleu};
  if (!options.sep) {
    std::map<std::string, TokenSeq> whole;
    for (const auto& [id, text] : raw_outputs) whole.emplace(id, tokenize(text));
    set.reports.push_back(
        score_block("whole", instances, whole, config, options.smooth_bleu));
  } else {
    const ExtractReport extracted =
        extract_parts(raw_outputs, *options.sep, options.many_sep_second);
    std::map<std::string, TokenSeq> first;
    std::map<std::string, TokenSeq> second;
    for (const auto& [id, parts] : extracted.parts) {
      first.emplace(id, tokenize(parts.first));
      second.emplace(id, tokenize(parts.second));
    }
    set.reports.push_back(
        score_block("first", instances, first, config, options.smooth_bleu));
    set.reports.push_back(
        score_block("second", instances, second, config, options.smooth_bleu));
  }
  return set;
}

DatasetBuildReport pipeline_init(const PipelineInitOptions& options) {
  if (options.sep.empty()) throw ValidationError("separator must not be empty");
  check_score_knobs(options.n_max, options.fixed_lambda);
  const fs::path manifest_path = manifest_file(options.dir);
  if (fs::exists(manifest_path))
    throw ValidationError("pipeline already initialized: " + manifest_path.string());

  LoadResult loaded = load_instances(options.instances_path);
  if (loaded.entries.empty())
    throw ValidationError("instances file has no rows: " + options.instances_path.string());

  std::error_code ec;
  fs::create_directories(options.dir, ec);
  if (ec)
    throw IoError("cannot create pipeline directory " + options.dir.string() + ": " +
                  ec.message());
  copy_into(options.instances_path, options.dir / "instances.jsonl");

  PipelineManifest manifest;
  manifest.sep = options.sep;
  manifest.instances_path = "instances.jsonl";
  manifest.n_max = options.n_max;
  manifest.fixed_lambda = options.fixed_lambda;
  manifest.many_sep_second = options.many_sep_second;

  PipelineStage stage0;
  stage0.stage_index = 0;
  stage0.dataset_path = stage_file(0, "dataset");
  DatasetBuildReport report =
      build_stage_dataset(loaded.entries, {}, 0, options.sep, options.dir / stage0.dataset_path);
  if (report.rows_written == 0)
    throw ValidationError("every target contains the separator; the stage-0 dataset is empty");
  manifest.history.stages.push_back(std::move(stage0));
  save_manifest(manifest, manifest_path);
  return report;
}

MakeDatasetResult pipeline_make_dataset(const fs::path& dir) {
  PipelineManifest manifest = read_pipeline(dir);
  const PipelineStage& latest = manifest.history.stages.back();
  if (!latest.outputs_path)
    throw ValidationError("stage " + std::to_string(latest.stage_index) +
                          " has no ingested outputs; run ingest-outputs first");

  const Corpus corpus = read_pipeline_corpus(dir, manifest);
  const auto previous = load_generations(dir / *latest.outputs_path);
  const int next_index = latest.stage_index + 1;

  PipelineStage next;
  next.stage_index = next_index;
  next.dataset_path = stage_file(next_index, "dataset");
  DatasetBuildReport report =
      build_stage_dataset(corpus, previous, next_index, manifest.sep, dir / next.dataset_path);
  if (report.rows_written == 0)
    throw ValidationError("every row was skipped; the stage-" + std::to_string(next_index) +
                          " dataset is empty");
  manifest.history.stages.push_back(std::move(next));
  save_manifest(manifest, manifest_file(dir));
  return {next_index, std::move(report)};
}

void pipeline_ingest_outputs(const fs::path& dir, const fs::path& outputs_file,
                             std::optional<int> stage_index) {
  PipelineManifest manifest = read_pipeline(dir);
  PipelineStage& latest = manifest.history.stages.back();
  const int target = stage_index.value_or(latest.stage_index);
  if (target != latest.stage_index)
    throw ValidationError("outputs go to the latest stage " +
                          std::to_string(latest.stage_index) + ", not stage " +
                          std::to_string(target));
  if (latest.outputs_path)
    throw ValidationError("stage " + std::to_string(latest.stage_index) +
                          " already has outputs: " + *latest.outputs_path);

  const Corpus corpus = read_pipeline_corpus(dir, manifest);
  const auto outputs = load_generations(outputs_file);
  check_id_alignment(corpus, outputs);

  const std::string name = stage_file(target, "outputs");
  copy_into(outputs_file, dir / name);
  latest.outputs_path = name;
  save_manifest(manifest, manifest_file(dir));
}

StageScores pipeline_score_stage(const fs::path& dir, std::optional<int> stage_index,
                                 unsigned threads) {
  PipelineManifest manifest = read_pipeline(dir);
  PipelineStage* stage = nullptr;
  if (stage_index) {
    for (auto& candidate : manifest.history.stages)
      if (candidate.stage_index == *stage_index) stage = &candidate;
    if (!stage) throw ValidationError("no stage " + std::to_string(*stage_index));
  } else {
    for (auto& candidate : manifest.history.stages)
      if (candidate.outputs_path) stage = &candidate;
    if (!stage) throw ValidationError("no stage has ingested outputs yet");
  }
  if (!stage->outputs_path)
    throw ValidationError("stage " + std::to_string(stage->stage_index) +
                          " has no ingested outputs");

  const Corpus corpus = read_pipeline_corpus(dir, manifest);
  const auto raw = load_generations(dir / *stage->outputs_path);
  check_id_alignment(corpus, raw);
  const ExtractReport extracted = extract_parts(raw, manifest.sep, manifest.many_sep_second);

  std::map<std::string, TokenSeq> first;
  std::map<std::string, TokenSeq> second;
  for (const auto& [id, parts] : extracted.parts) {
    first.emplace(id, tokenize(parts.first));
    second.emplace(id, tokenize(parts.second));
  }
  const std::vector<Instance> instances = to_instances(corpus);
  ParentConfig config;
  config.n_max = manifest.n_max;
  config.fixed_lambda = manifest.fixed_lambda;
  config.threads = threads;

  StageScores scores;
  scores.stage_index = stage->stage_index;
  scores.first = parent_corpus(instances, first, config);
  scores.second = parent_corpus(instances, second, config);
  stage->first_part_scores = scores.first;
  stage->second_part_scores = scores.second;
  save_manifest(manifest, manifest_file(dir));
  return scores;
}

PipelineStatus pipeline_status(const fs::path& dir) {
  PipelineStatus status;
  status.manifest = read_pipeline(dir);

  StageHistory scored;
  for (const auto& stage : status.manifest.history.stages) {
    if (!stage.first_part_scores) break;
    scored.stages.push_back(stage);
  }
  status.scored_stages = scored.stages.size();
  for (std::size_t i = scored.stages.size(); i < status.manifest.history.stages.size(); ++i) {
    const auto& stage = status.manifest.history.stages[i];
    const std::string name = "stage " + std::to_string(stage.stage_index);
    if (!stage.outputs_path)
      status.pending.push_back(name + ": waiting for model outputs (ingest-outputs)");
    else if (!stage.first_part_scores)
      status.pending.push_back(name + ": outputs ingested, waiting for score-stage");
    else
      status.pending.push_back(name + ": scored out of order; earlier stages lack scores");
  }
  if (!scored.stages.empty()) status.decision = should_continue(scored);
  return status;
}

}  // namespace d2t
