#pragma once

#include <array>
#include <span>
#include <utility>

#include "d2t/text.hpp"

namespace d2t {

inline constexpr int kBleuMaxOrder = 4;

struct BleuConfig {
  // Add-epsilon smoothing of the modified precisions. Off by default; the
  // unsmoothed statistics are exact integers, so corpus permutation and
  // duplication leave the score bit-identical.
  bool smooth = false;
  double smooth_epsilon = 0.1;
};

struct BleuScore {
  double score = 0.0;  // 0..100
  // Modified precision per order; 0 for orders the candidates had no
  // n-grams of (those orders are excluded from the geometric mean).
  std::array<double, kBleuMaxOrder> precisions{};
  // exp(1 - r/c) when the candidates are shorter than the references, else
  // 1. Degenerate all-empty-candidate corpora get 0.
  double brevity_penalty = 1.0;
};

// Corpus BLEU-4 over (candidate, reference) pairs: clipped n-gram matches
// pooled over the corpus in integer arithmetic, geometric mean over the
// orders with candidate n-grams, exponential brevity penalty. References
// must be non-empty; candidates may be empty.
BleuScore corpus_bleu(std::span<const std::pair<TokenSeq, TokenSeq>> pairs,
                      const BleuConfig& config = {});

}  // namespace d2t
