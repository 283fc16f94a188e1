#include "parent_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace d2t::testing {
namespace {

using Gram = std::vector<std::string>;

std::vector<Gram> gram_occurrences(const TokenSeq& tokens, int order) {
  std::vector<Gram> grams;
  const auto n = static_cast<std::size_t>(order);
  if (tokens.size() < n) return grams;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    grams.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
  return grams;
}

std::size_t count_of(const Gram& gram, const std::vector<Gram>& grams) {
  return static_cast<std::size_t>(std::count(grams.begin(), grams.end(), gram));
}

bool table_has_token(const Table& table, const std::string& token) {
  for (const auto& record : table.records) {
    for (const auto& t : record.attribute)
      if (t == token) return true;
    for (const auto& t : record.value)
      if (t == token) return true;
  }
  return false;
}

double overlap(const Gram& gram, const Table& table) {
  std::size_t hits = 0;
  for (const auto& token : gram)
    if (table_has_token(table, token)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(gram.size());
}

// Log-space geometric mean; a zero forces the result to zero.
double combine(const std::vector<double>& values) {
  double log_sum = 0.0;
  for (const double value : values) {
    if (value == 0.0) return 0.0;
    log_sum += std::log(value);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

}  // namespace

std::size_t oracle_lcs(const TokenSeq& a, const TokenSeq& b) {
  const TokenSeq& shorter = a.size() <= b.size() ? a : b;
  const TokenSeq& longer = a.size() <= b.size() ? b : a;
  if (shorter.size() > 20) throw std::invalid_argument("oracle_lcs input too long");
  std::size_t best = 0;
  const std::size_t m = shorter.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const auto picked = static_cast<std::size_t>(std::popcount(mask));
    if (picked <= best) continue;
    Gram subsequence;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1) subsequence.push_back(shorter[i]);
    std::size_t matched = 0;
    for (const auto& token : longer)
      if (matched < subsequence.size() && token == subsequence[matched]) ++matched;
    if (matched == subsequence.size()) best = picked;
  }
  return best;
}

OracleScore oracle_parent(const Instance& instance, int n_max) {
  const Table& table = instance.table;
  const TokenSeq& reference = instance.reference;
  const TokenSeq& generation = instance.generation;
  OracleScore score;

  std::vector<double> precision_orders;
  std::vector<double> recall_orders;
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<Gram> gen_grams = gram_occurrences(generation, n);
    const std::vector<Gram> ref_grams = gram_occurrences(reference, n);

    if (!gen_grams.empty()) {
      double sum = 0.0;
      for (const Gram& gram : gen_grams) {
        const std::size_t in_gen = count_of(gram, gen_grams);
        const std::size_t in_ref = count_of(gram, ref_grams);
        const double pr_in_reference = static_cast<double>(std::min(in_gen, in_ref)) /
                                       static_cast<double>(in_gen);
        sum += pr_in_reference + (1.0 - pr_in_reference) * overlap(gram, table);
      }
      precision_orders.push_back(sum / static_cast<double>(gen_grams.size()));
    }

    if (!ref_grams.empty()) {
      double covered = 0.0;
      double mass = 0.0;
      for (std::size_t i = 0; i < ref_grams.size(); ++i) {
        bool seen_before = false;
        for (std::size_t j = 0; j < i && !seen_before; ++j)
          if (ref_grams[j] == ref_grams[i]) seen_before = true;
        if (seen_before) continue;
        const double weight = overlap(ref_grams[i], table);
        const std::size_t in_ref = count_of(ref_grams[i], ref_grams);
        const std::size_t in_gen = count_of(ref_grams[i], gen_grams);
        mass += static_cast<double>(in_ref) * weight;
        covered += static_cast<double>(std::min(in_ref, in_gen)) * weight;
      }
      if (mass > 0.0) recall_orders.push_back(covered / mass);
    }
  }
  score.precision = precision_orders.empty() ? 0.0 : combine(precision_orders);
  score.recall_vs_reference = recall_orders.empty()
                                  ? (generation == reference ? 1.0 : 0.0)
                                  : combine(recall_orders);

  double generation_coverage = 0.0;
  double reference_coverage = 0.0;
  for (const auto& record : table.records) {
    const auto size = static_cast<double>(record.value.size());
    generation_coverage += static_cast<double>(oracle_lcs(record.value, generation)) / size;
    reference_coverage += static_cast<double>(oracle_lcs(record.value, reference)) / size;
  }
  const auto records = static_cast<double>(table.records.size());
  score.recall_vs_table = generation_coverage / records;
  score.lambda = std::clamp(1.0 - reference_coverage / records, 0.0, 1.0);

  if (score.lambda == 0.0) {
    score.recall = score.recall_vs_reference;
  } else if (score.lambda == 1.0) {
    score.recall = score.recall_vs_table;
  } else if (score.recall_vs_reference == 0.0 || score.recall_vs_table == 0.0) {
    score.recall = 0.0;
  } else {
    score.recall = std::exp((1.0 - score.lambda) * std::log(score.recall_vs_reference) +
                            score.lambda * std::log(score.recall_vs_table));
  }

  const double denominator = score.precision + score.recall;
  score.f1 = denominator == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denominator;
  return score;
}

}  // namespace d2t::testing
