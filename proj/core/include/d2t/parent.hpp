#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d2t/table.hpp"
#include "d2t/text.hpp"

namespace d2t {

// One evaluation unit: structured input, reference text, candidate text.
struct Instance {
  std::string id;
  Table table;
  TokenSeq reference;
  TokenSeq generation;
};

struct ParentConfig {
  // Highest n-gram order entering precision and reference recall.
  int n_max = 4;
  // Fixed mixing weight in [0,1] for the recall combination; unset means
  // the per-instance heuristic 1 - record_recall(reference).
  std::optional<double> fixed_lambda;
  // Per-order weights for the geometric combinations, indexed by order - 1.
  // Unset means uniform. Must have exactly n_max positive entries.
  std::optional<std::vector<double>> order_weights;
  // Worker threads for corpus scoring; 0 picks the hardware concurrency.
  // Results are identical for every thread count.
  unsigned threads = 0;
};

struct ParentScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Components behind `recall`: recall = ref^(1-lambda) * table^lambda.
  double recall_vs_reference = 0.0;
  double recall_vs_table = 0.0;
  double lambda = 0.0;
  // Entailed precision per order, for the orders the generation has
  // n-grams of. Shorter generations simply omit the higher orders.
  std::vector<std::pair<int, double>> per_n_precision;
};

struct CorpusScore {
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f1 = 0.0;
  std::size_t n_instances = 0;
};

// Word-overlap entailment: the probability that an n-gram is supported by
// the table is the fraction of its tokens appearing anywhere in the table.
class WordOverlapModel {
 public:
  explicit WordOverlapModel(const Table& table);

  double prob(std::span<const std::string> gram) const;
  // Same, for an n-gram in joined-key form.
  double prob_key(std::string_view ngram_key) const;

 private:
  TokenSet support_;
};

double entailment_prob(std::span<const std::string> gram, const Table& table);

// Entailed n-gram precision at one order: each generation n-gram
// contributes min(count_gen, count_ref)/count_gen probability mass of being
// in the reference, and its entailment probability for the rest. Returns
// nullopt when the generation has no n-grams of this order.
std::optional<double> precision_n(const TokenSeq& generation, const TokenSeq& reference,
                                  const Table& table, int order);

// Entailment-weighted clipped n-gram recall of the reference, combined
// geometrically over the orders whose weighted mass is nonzero. When every
// order has zero mass the value is 1 if generation == reference, else 0.
double reference_recall(const TokenSeq& generation, const TokenSeq& reference,
                        const Table& table, const ParentConfig& config = {});

// Record-level recall: the mean over records of LCS(value, generation) /
// |value|. Rejects a table with no records.
double table_recall(const TokenSeq& generation, const Table& table);

// Mixing weight heuristic: 1 - table_recall(reference), clamped to [0,1].
// High when the reference strays from the table, shifting recall weight
// onto the table side.
double lambda_for(const Instance& instance);

ParentScore parent_instance(const Instance& instance, const ParentConfig& config = {});

// Score a corpus of instances against generations keyed by instance id.
// Means are arithmetic, accumulated in instance order with compensated
// summation; the thread count never changes the result. Rejects duplicate
// ids and any mismatch between instance ids and generation keys.
CorpusScore parent_corpus(std::span<const Instance> instances,
                          const std::map<std::string, TokenSeq>& generations,
                          const ParentConfig& config = {});

}  // namespace d2t
