#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "d2t/bleu.hpp"
#include "d2t/parent.hpp"
#include "d2t/split.hpp"

namespace d2t {

enum class ReportFormat { kJson, kTsv };

// The knobs a report was produced under. Embedded in every rendering so a
// number can always be traced back to its conventions.
struct ReportConventions {
  int n_max = 4;
  std::optional<double> fixed_lambda;  // unset = per-instance heuristic
  std::optional<std::string> sep;      // unset = whole outputs were scored
  ManySepSecond many_sep_second = ManySepSecond::kFirstSegment;
  bool smooth_bleu = false;
};

// One scored block: the whole outputs, or one side of the separator split.
struct EvalReport {
  std::string label;  // "whole", "first" or "second"
  BleuScore bleu;
  CorpusScore parent;
  double mean_generation_tokens = 0.0;
  double mean_reference_tokens = 0.0;
};

struct ReportSet {
  ReportConventions conventions;
  std::vector<EvalReport> reports;
};

// Deterministic rendering: fixed key order, floats at six decimals, LF line
// endings. The two formats carry the same numbers.
std::string render_report(const ReportSet& set, ReportFormat format);

// Render and write as bytes; identical inputs produce identical files.
void write_report(const ReportSet& set, ReportFormat format,
                  const std::filesystem::path& file);

}  // namespace d2t
