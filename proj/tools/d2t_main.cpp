#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2t/errors.hpp"
#include "d2t/harness.hpp"
#include "d2t/version.hpp"

namespace {

using nlohmann::ordered_json;

std::optional<double> parse_lambda(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw d2t::ValidationError("--lambda must be \"auto\" or a number, got \"" + text + "\"");
  }
  if (used != text.size())
    throw d2t::ValidationError("--lambda must be \"auto\" or a number, got \"" + text + "\"");
  if (value < 0.0 || value > 1.0)
    throw d2t::ValidationError("--lambda must lie in [0,1], got " + text);
  return value;
}

d2t::ManySepSecond parse_many_sep(const std::string& text) {
  return text == "second" ? d2t::ManySepSecond::kSecondSegment
                          : d2t::ManySepSecond::kFirstSegment;
}

std::string format_f1(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw d2t::IoError("cannot write output file: " + out_path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw d2t::IoError("failed writing output file: " + out_path);
}

struct ScoreArgs {
  std::string instances;
  std::string generations;
  std::string sep;
  bool sep_given = false;
  int n_max = 4;
  std::string lambda = "auto";
  std::string many_sep_second = "first";
  std::string smooth_bleu = "off";
  std::string format = "json";
  std::string out;
  unsigned threads = 0;
};

int run_score_command(const ScoreArgs& args) {
  d2t::ScoreOptions options;
  options.instances_path = args.instances;
  options.generations_path = args.generations;
  if (args.sep_given) options.sep = args.sep;
  options.n_max = args.n_max;
  options.fixed_lambda = parse_lambda(args.lambda);
  options.many_sep_second = parse_many_sep(args.many_sep_second);
  options.smooth_bleu = args.smooth_bleu == "on";
  options.threads = args.threads;

  std::vector<std::string> warnings;
  const d2t::ReportSet set = d2t::run_score(options, &warnings);
  for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";

  const auto format =
      args.format == "tsv" ? d2t::ReportFormat::kTsv : d2t::ReportFormat::kJson;
  emit(d2t::render_report(set, format), args.out);
  return 0;
}

struct SplitArgs {
  std::string outputs;
  std::string text;
  bool text_given = false;
  std::string sep = "<SEP>";
  std::string many_sep_second = "first";
  std::string out;
};

int run_split_command(const SplitArgs& args) {
  const auto rule = parse_many_sep(args.many_sep_second);
  if (args.text_given) {
    const d2t::SplitOutput parts = d2t::split_output(args.text, args.sep, rule);
    const ordered_json row{{"first", parts.first},
                           {"second", parts.second},
                           {"sep_count", parts.sep_count}};
    emit(row.dump() + "\n", args.out);
    return 0;
  }
  const auto outputs = d2t::load_generations(args.outputs);
  if (outputs.empty())
    throw d2t::ValidationError("outputs file has no rows: " + args.outputs);
  const d2t::ExtractReport report = d2t::extract_parts(outputs, args.sep, rule);
  std::string rendered;
  for (const auto& [id, parts] : report.parts) {
    const ordered_json row{{"id", id},
                           {"first", parts.first},
                           {"second", parts.second},
                           {"sep_count", parts.sep_count}};
    rendered += row.dump() + "\n";
  }
  emit(rendered, args.out);
  std::cerr << "separator counts: none=" << report.without_sep
            << " one=" << report.single_sep << " many=" << report.many_sep << "\n";
  return 0;
}

void print_stage_scores(const d2t::StageScores& scores) {
  std::cout << "stage " << scores.stage_index << " scored over "
            << scores.first.n_instances << " instance(s)\n"
            << "  first  part: precision " << format_f1(scores.first.mean_precision)
            << "  recall " << format_f1(scores.first.mean_recall) << "  F1 "
            << format_f1(scores.first.mean_f1) << "\n"
            << "  second part: precision " << format_f1(scores.second.mean_precision)
            << "  recall " << format_f1(scores.second.mean_recall) << "  F1 "
            << format_f1(scores.second.mean_f1) << "\n";
}

void print_build_report(int stage_index, const d2t::DatasetBuildReport& report) {
  std::cout << "stage " << stage_index << " dataset: " << report.rows_written
            << " row(s) written, " << report.rows_skipped << " skipped\n";
  for (const auto& id : report.skipped_ids)
    std::cerr << "warning: skipped '" << id << "' (target contains the separator)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-to-text evaluation and dataset pipeline toolkit"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version",
                       std::string("d2t ") + d2t::kVersion + "\n" + d2t::kConventions);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand(
      "score", "Score generations against references and tables");
  score->add_option("--instances", score_args.instances, "Instances JSONL file")->required();
  score->add_option("--generations", score_args.generations, "Generations JSONL file")
      ->required();
  CLI::Option* sep_option = score->add_option(
      "--sep", score_args.sep,
      "Separator; when given, outputs are split and both parts scored");
  score->add_option("--n-max", score_args.n_max, "Highest n-gram order")
      ->capture_default_str();
  score->add_option("--lambda", score_args.lambda, "\"auto\" or a fixed value in [0,1]")
      ->capture_default_str();
  score->add_option("--many-sep-second", score_args.many_sep_second,
                    "Second part when the separator repeats")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();
  score->add_option("--smooth-bleu", score_args.smooth_bleu, "Add-epsilon BLEU smoothing")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  score->add_option("--format", score_args.format, "Report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  score->add_option("--out", score_args.out, "Write the report here instead of stdout");
  score->add_option("--threads", score_args.threads, "Scoring threads (0 = all cores)");

  SplitArgs split_args;
  CLI::App* split =
      app.add_subcommand("split", "Split raw outputs into first/second parts");
  CLI::Option* outputs_option =
      split->add_option("--outputs", split_args.outputs, "Outputs JSONL file");
  CLI::Option* text_option =
      split->add_option("--text", split_args.text, "Split one literal text instead");
  split->add_option("--sep", split_args.sep, "Separator")->capture_default_str();
  split->add_option("--many-sep-second", split_args.many_sep_second,
                    "Second part when the separator repeats")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();
  split->add_option("--out", split_args.out, "Write rows here instead of stdout");
  outputs_option->excludes(text_option);

  CLI::App* pipeline =
      app.add_subcommand("pipeline", "Iterative dataset construction");
  pipeline->require_subcommand(1);

  d2t::PipelineInitOptions init_options;
  std::string init_dir;
  std::string init_instances;
  std::string init_lambda = "auto";
  std::string init_many = "first";
  CLI::App* init = pipeline->add_subcommand(
      "init", "Create a pipeline directory with the stage-0 dataset");
  init->add_option("--dir", init_dir, "Pipeline directory")->required();
  init->add_option("--instances", init_instances, "Instances JSONL file")->required();
  init->add_option("--sep", init_options.sep, "Separator")->capture_default_str();
  init->add_option("--n-max", init_options.n_max, "Highest n-gram order")
      ->capture_default_str();
  init->add_option("--lambda", init_lambda, "\"auto\" or a fixed value in [0,1]")
      ->capture_default_str();
  init->add_option("--many-sep-second", init_many,
                   "Second part when the separator repeats")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();

  std::string make_dir;
  CLI::App* make = pipeline->add_subcommand(
      "make-dataset", "Build the next stage's dataset from the latest outputs");
  make->add_option("--dir", make_dir, "Pipeline directory")->required();

  std::string ingest_dir;
  std::string ingest_outputs;
  int ingest_stage = -1;
  CLI::App* ingest = pipeline->add_subcommand(
      "ingest-outputs", "Attach a raw model outputs file to the latest stage");
  ingest->add_option("--dir", ingest_dir, "Pipeline directory")->required();
  ingest->add_option("--outputs", ingest_outputs, "Outputs JSONL file")->required();
  CLI::Option* ingest_stage_option =
      ingest->add_option("--stage", ingest_stage, "Stage index (default: latest)");

  std::string score_stage_dir;
  int score_stage_index = -1;
  unsigned score_stage_threads = 0;
  CLI::App* score_stage = pipeline->add_subcommand(
      "score-stage", "Score a stage's outputs and record them in the manifest");
  score_stage->add_option("--dir", score_stage_dir, "Pipeline directory")->required();
  CLI::Option* score_stage_option = score_stage->add_option(
      "--stage", score_stage_index, "Stage index (default: latest with outputs)");
  score_stage->add_option("--threads", score_stage_threads, "Scoring threads (0 = all cores)");

  std::string status_dir;
  CLI::App* status = pipeline->add_subcommand(
      "status", "Show stage history and the stopping-rule verdict");
  status->add_option("--dir", status_dir, "Pipeline directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (score->parsed()) {
      score_args.sep_given = sep_option->count() > 0;
      return run_score_command(score_args);
    }
    if (split->parsed()) {
      split_args.text_given = text_option->count() > 0;
      if (!split_args.text_given && outputs_option->count() == 0)
        throw d2t::ValidationError("split needs --outputs or --text");
      return run_split_command(split_args);
    }
    if (init->parsed()) {
      init_options.dir = init_dir;
      init_options.instances_path = init_instances;
      init_options.fixed_lambda = parse_lambda(init_lambda);
      init_options.many_sep_second = parse_many_sep(init_many);
      const d2t::DatasetBuildReport report = d2t::pipeline_init(init_options);
      print_build_report(0, report);
      std::cout << "pipeline ready at " << init_dir << "\n";
      return 0;
    }
    if (make->parsed()) {
      const d2t::MakeDatasetResult result = d2t::pipeline_make_dataset(make_dir);
      print_build_report(result.stage_index, result.report);
      return 0;
    }
    if (ingest->parsed()) {
      std::optional<int> stage;
      if (ingest_stage_option->count() > 0) stage = ingest_stage;
      d2t::pipeline_ingest_outputs(ingest_dir, ingest_outputs, stage);
      std::cout << "outputs ingested\n";
      return 0;
    }
    if (score_stage->parsed()) {
      std::optional<int> stage;
      if (score_stage_option->count() > 0) stage = score_stage_index;
      print_stage_scores(
          d2t::pipeline_score_stage(score_stage_dir, stage, score_stage_threads));
      return 0;
    }
    if (status->parsed()) {
      const d2t::PipelineStatus state = d2t::pipeline_status(status_dir);
      for (const auto& stage : state.manifest.history.stages) {
        std::cout << "stage " << stage.stage_index << ": dataset=" << stage.dataset_path
                  << " outputs=" << (stage.outputs_path ? *stage.outputs_path : "-");
        if (stage.first_part_scores)
          std::cout << " first-F1=" << format_f1(stage.first_part_scores->mean_f1);
        if (stage.second_part_scores)
          std::cout << " second-F1=" << format_f1(stage.second_part_scores->mean_f1);
        std::cout << "\n";
      }
      for (const auto& line : state.pending) std::cout << line << "\n";
      if (state.decision)
        std::cout << "decision: " << (state.decision->keep_going ? "continue" : "stop")
                  << " (" << state.decision->reason << ")\n";
      else
        std::cout << "decision: none yet (no scored stage)\n";
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const d2t::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const d2t::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
