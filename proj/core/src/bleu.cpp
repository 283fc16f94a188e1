#include "d2t/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "d2t/errors.hpp"

namespace d2t {

BleuScore corpus_bleu(std::span<const std::pair<TokenSeq, TokenSeq>> pairs,
                      const BleuConfig& config) {
  if (pairs.empty()) throw ValidationError("cannot score an empty corpus");

  std::array<std::int64_t, kBleuMaxOrder> matched{};
  std::array<std::int64_t, kBleuMaxOrder> total{};
  std::int64_t candidate_length = 0;
  std::int64_t reference_length = 0;

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [candidate, reference] = pairs[i];
    if (reference.empty())
      throw ValidationError("reference at index " + std::to_string(i) + " has no tokens");
    candidate_length += static_cast<std::int64_t>(candidate.size());
    reference_length += static_cast<std::int64_t>(reference.size());
    for (int n = 1; n <= kBleuMaxOrder; ++n) {
      const NGramCounts candidate_grams = ngram_counts(candidate, n);
      if (candidate_grams.counts.empty()) continue;
      const NGramCounts reference_grams = ngram_counts(reference, n);
      for (const auto& [key, count] : candidate_grams.counts) {
        total[n - 1] += count;
        std::int64_t in_reference = 0;
        if (const auto it = reference_grams.counts.find(key); it != reference_grams.counts.end())
          in_reference = it->second;
        matched[n - 1] += std::min(count, in_reference);
      }
    }
  }

  BleuScore result;
  if (candidate_length == 0) {
    // Every candidate empty: no precision signal at all, score 0.
    result.brevity_penalty = 0.0;
    return result;
  }
  result.brevity_penalty =
      candidate_length < reference_length
          ? std::exp(1.0 - static_cast<double>(reference_length) /
                               static_cast<double>(candidate_length))
          : 1.0;

  std::vector<double> present;
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    if (total[n - 1] == 0) continue;  // no candidate n-grams at this order
    double numerator = static_cast<double>(matched[n - 1]);
    double denominator = static_cast<double>(total[n - 1]);
    if (config.smooth) {
      numerator += config.smooth_epsilon;
      denominator += config.smooth_epsilon;
    }
    result.precisions[n - 1] = numerator / denominator;
    present.push_back(result.precisions[n - 1]);
  }
  if (present.empty()) return result;

  result.score = 100.0 * result.brevity_penalty * geometric_mean(present);
  return result;
}

}  // namespace d2t
