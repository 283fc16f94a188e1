#include "d2t/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "d2t/errors.hpp"
#include "d2t/version.hpp"

namespace d2t {
namespace {

std::string fixed6(double value) {
  if (value == 0.0) value = 0.0;  // never print "-0.000000"
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string json_string(std::string_view text) {
  return nlohmann::json(text).dump();
}

std::string lambda_text(const ReportConventions& conventions) {
  return conventions.fixed_lambda ? fixed6(*conventions.fixed_lambda) : "auto";
}

const char* rule_text(ManySepSecond rule) {
  return rule == ManySepSecond::kSecondSegment ? "second" : "first";
}

std::string render_json(const ReportSet& set) {
  const auto& conventions = set.conventions;
  std::string out;
  out += "{\n";
  out += "  \"tool\": \"d2t\",\n";
  out += "  \"version\": " + json_string(kVersion) + ",\n";
  out += "  \"conventions\": {\n";
  out += "    \"tokenizer\": \"lowercase-whitespace\",\n";
  out += "    \"entailment\": \"word-overlap\",\n";
  out += "    \"n_max\": " + std::to_string(conventions.n_max) + ",\n";
  out += "    \"lambda\": " + json_string(lambda_text(conventions)) + ",\n";
  if (conventions.sep) {
    out += "    \"sep\": " + json_string(*conventions.sep) + ",\n";
    out += "    \"many_sep_second\": " + json_string(rule_text(conventions.many_sep_second)) +
           ",\n";
  }
  out += std::string("    \"smooth_bleu\": ") + (conventions.smooth_bleu ? "true" : "false") +
         "\n";
  out += "  },\n";
  out += "  \"reports\": [\n";
  for (std::size_t i = 0; i < set.reports.size(); ++i) {
    const auto& report = set.reports[i];
    out += "    {\n";
    out += "      \"label\": " + json_string(report.label) + ",\n";
    out += "      \"bleu\": {\n";
    out += "        \"score\": " + fixed6(report.bleu.score) + ",\n";
    out += "        \"precisions\": [";
    for (int n = 0; n < kBleuMaxOrder; ++n) {
      if (n > 0) out += ", ";
      out += fixed6(report.bleu.precisions[n]);
    }
    out += "],\n";
    out += "        \"brevity_penalty\": " + fixed6(report.bleu.brevity_penalty) + "\n";
    out += "      },\n";
    out += "      \"parent\": {\n";
    out += "        \"precision\": " + fixed6(report.parent.mean_precision) + ",\n";
    out += "        \"recall\": " + fixed6(report.parent.mean_recall) + ",\n";
    out += "        \"f1\": " + fixed6(report.parent.mean_f1) + ",\n";
    out += "        \"n_instances\": " + std::to_string(report.parent.n_instances) + "\n";
    out += "      },\n";
    out += "      \"mean_generation_tokens\": " + fixed6(report.mean_generation_tokens) + ",\n";
    out += "      \"mean_reference_tokens\": " + fixed6(report.mean_reference_tokens) + "\n";
    out += i + 1 < set.reports.size() ? "    },\n" : "    }\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

std::string render_tsv(const ReportSet& set) {
  const auto& conventions = set.conventions;
  std::string out;
  out += "# tool=d2t version=" + std::string(kVersion) + "\n";
  out += "# tokenizer=lowercase-whitespace entailment=word-overlap";
  out += " n_max=" + std::to_string(conventions.n_max);
  out += " lambda=" + lambda_text(conventions);
  if (conventions.sep) {
    out += " sep=" + json_string(*conventions.sep);
    out += " many_sep_second=" + std::string(rule_text(conventions.many_sep_second));
  }
  out += std::string(" smooth_bleu=") + (conventions.smooth_bleu ? "on" : "off") + "\n";
  out +=
      "label\tbleu\tbleu_bp\tbleu_p1\tbleu_p2\tbleu_p3\tbleu_p4"
      "\tparent_precision\tparent_recall\tparent_f1"
      "\tmean_generation_tokens\tmean_reference_tokens\tn_instances\n";
  for (const auto& report : set.reports) {
    out += report.label;
    out += '\t' + fixed6(report.bleu.score);
    out += '\t' + fixed6(report.bleu.brevity_penalty);
    for (int n = 0; n < kBleuMaxOrder; ++n) out += '\t' + fixed6(report.bleu.precisions[n]);
    out += '\t' + fixed6(report.parent.mean_precision);
    out += '\t' + fixed6(report.parent.mean_recall);
    out += '\t' + fixed6(report.parent.mean_f1);
    out += '\t' + fixed6(report.mean_generation_tokens);
    out += '\t' + fixed6(report.mean_reference_tokens);
    out += '\t' + std::to_string(report.parent.n_instances);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string render_report(const ReportSet& set, ReportFormat format) {
  return format == ReportFormat::kJson ? render_json(set) : render_tsv(set);
}

void write_report(const ReportSet& set, ReportFormat format,
                  const std::filesystem::path& file) {
  const std::string text = render_report(set, format);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing report: " + file.string());
}

}  // namespace d2t
