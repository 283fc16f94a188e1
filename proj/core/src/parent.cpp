#include "d2t/parent.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "d2t/errors.hpp"

namespace d2t {
namespace {

// Kahan compensated summation; keeps corpus means independent of rounding
// drift as corpora grow.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void validate_config(const ParentConfig& config) {
  if (config.n_max < 1)
    throw ValidationError("n_max must be >= 1, got " + std::to_string(config.n_max));
  if (config.fixed_lambda && (*config.fixed_lambda < 0.0 || *config.fixed_lambda > 1.0))
    throw ValidationError("fixed lambda must lie in [0,1], got " +
                          std::to_string(*config.fixed_lambda));
  if (config.order_weights) {
    if (config.order_weights->size() != static_cast<std::size_t>(config.n_max))
      throw ValidationError("order_weights needs exactly n_max entries");
    for (const double w : *config.order_weights)
      if (!(w > 0.0)) throw ValidationError("order weights must be positive");
  }
}

// Geometric combination of per-order values (uniform unless weights are
// configured). `orders` names the order behind each value.
double combine_orders(const std::vector<double>& values, const std::vector<int>& orders,
                      const ParentConfig& config) {
  if (!config.order_weights) return geometric_mean(values);
  double total_weight = 0.0;
  for (const int n : orders) total_weight += (*config.order_weights)[n - 1];
  double combined = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) return 0.0;
    combined *= std::pow(values[i], (*config.order_weights)[orders[i] - 1] / total_weight);
  }
  return combined;
}

std::optional<double> precision_order(const TokenSeq& generation, const TokenSeq& reference,
                                      const WordOverlapModel& model, int order) {
  const NGramCounts gen_grams = ngram_counts(generation, order);
  if (gen_grams.counts.empty()) return std::nullopt;
  const NGramCounts ref_grams = ngram_counts(reference, order);
  double entailed = 0.0;
  std::int64_t total = 0;
  for (const auto& [key, count] : gen_grams.counts) {
    total += count;
    std::int64_t in_reference = 0;
    if (const auto it = ref_grams.counts.find(key); it != ref_grams.counts.end())
      in_reference = it->second;
    const std::int64_t matched = std::min(count, in_reference);
    entailed += static_cast<double>(matched) +
                static_cast<double>(count - matched) * model.prob_key(key);
  }
  return entailed / static_cast<double>(total);
}

double reference_recall_impl(const TokenSeq& generation, const TokenSeq& reference,
                             const WordOverlapModel& model, const ParentConfig& config) {
  std::vector<double> values;
  std::vector<int> orders;
  for (int n = 1; n <= config.n_max; ++n) {
    const NGramCounts ref_grams = ngram_counts(reference, n);
    if (ref_grams.counts.empty()) continue;
    const NGramCounts gen_grams = ngram_counts(generation, n);
    double covered = 0.0;
    double mass = 0.0;
    for (const auto& [key, count] : ref_grams.counts) {
      const double weight = model.prob_key(key);
      if (weight == 0.0) continue;
      mass += static_cast<double>(count) * weight;
      std::int64_t in_generation = 0;
      if (const auto it = gen_grams.counts.find(key); it != gen_grams.counts.end())
        in_generation = it->second;
      covered += static_cast<double>(std::min(count, in_generation)) * weight;
    }
    if (mass == 0.0) continue;  // nothing entailed at this order
    values.push_back(covered / mass);
    orders.push_back(n);
  }
  // A reference with no entailed n-grams at any order gives the recall no
  // signal; only exact reproduction counts then.
  if (values.empty()) return generation == reference ? 1.0 : 0.0;
  return combine_orders(values, orders, config);
}

double lambda_impl(const TokenSeq& reference, const Table& table) {
  return std::clamp(1.0 - table_recall(reference, table), 0.0, 1.0);
}

ParentScore score_instance(const Table& table, const TokenSeq& reference,
                           const TokenSeq& generation, const ParentConfig& config,
                           const std::string& id) {
  const auto context = [&id](const char* what) {
    return id.empty() ? std::string(what) : "instance '" + id + "': " + what;
  };
  if (reference.empty()) throw ValidationError(context("reference has no tokens"));
  if (table.records.empty()) throw ValidationError(context("table has no records"));

  const WordOverlapModel model(table);
  ParentScore score;

  std::vector<double> values;
  std::vector<int> orders;
  for (int n = 1; n <= config.n_max; ++n) {
    if (const auto p = precision_order(generation, reference, model, n)) {
      values.push_back(*p);
      orders.push_back(n);
      score.per_n_precision.emplace_back(n, *p);
    }
  }
  score.precision = values.empty() ? 0.0 : combine_orders(values, orders, config);

  score.recall_vs_reference = reference_recall_impl(generation, reference, model, config);
  score.recall_vs_table = table_recall(generation, table);
  score.lambda = config.fixed_lambda ? *config.fixed_lambda : lambda_impl(reference, table);
  // The lambda endpoints collapse to one side exactly, by construction.
  if (score.lambda == 0.0) {
    score.recall = score.recall_vs_reference;
  } else if (score.lambda == 1.0) {
    score.recall = score.recall_vs_table;
  } else {
    score.recall = std::pow(score.recall_vs_reference, 1.0 - score.lambda) *
                   std::pow(score.recall_vs_table, score.lambda);
  }

  const double denominator = score.precision + score.recall;
  score.f1 = denominator == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denominator;
  return score;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string joined;
  for (const auto& id : ids) {
    if (!joined.empty()) joined += ", ";
    joined += "'" + id + "'";
  }
  return joined;
}

}  // namespace

WordOverlapModel::WordOverlapModel(const Table& table) : support_(table_token_set(table)) {}

double WordOverlapModel::prob(std::span<const std::string> gram) const {
  if (gram.empty()) throw ValidationError("entailment probability of an empty n-gram");
  std::size_t hits = 0;
  for (const auto& token : gram)
    if (support_.contains(token)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(gram.size());
}

double WordOverlapModel::prob_key(std::string_view ngram_key) const {
  std::size_t hits = 0;
  std::size_t total = 0;
  for (const auto token : split_ngram_key(ngram_key)) {
    ++total;
    if (support_.find(token) != support_.end()) ++hits;
  }
  if (total == 0) throw ValidationError("entailment probability of an empty n-gram");
  return static_cast<double>(hits) / static_cast<double>(total);
}

double entailment_prob(std::span<const std::string> gram, const Table& table) {
  return WordOverlapModel(table).prob(gram);
}

std::optional<double> precision_n(const TokenSeq& generation, const TokenSeq& reference,
                                  const Table& table, int order) {
  if (order < 1) throw ValidationError("n-gram order must be >= 1, got " + std::to_string(order));
  return precision_order(generation, reference, WordOverlapModel(table), order);
}

double reference_recall(const TokenSeq& generation, const TokenSeq& reference,
                        const Table& table, const ParentConfig& config) {
  validate_config(config);
  if (reference.empty()) throw ValidationError("reference has no tokens");
  return reference_recall_impl(generation, reference, WordOverlapModel(table), config);
}

double table_recall(const TokenSeq& generation, const Table& table) {
  if (table.records.empty()) throw ValidationError("record recall of a table with no records");
  double sum = 0.0;
  for (const auto& record : table.records) {
    if (record.value.empty()) throw ValidationError("table record with an empty value");
    sum += static_cast<double>(lcs_length(record.value, generation)) /
           static_cast<double>(record.value.size());
  }
  return std::clamp(sum / static_cast<double>(table.records.size()), 0.0, 1.0);
}

double lambda_for(const Instance& instance) {
  return lambda_impl(instance.reference, instance.table);
}

ParentScore parent_instance(const Instance& instance, const ParentConfig& config) {
  validate_config(config);
  return score_instance(instance.table, instance.reference, instance.generation, config,
                        instance.id);
}

CorpusScore parent_corpus(std::span<const Instance> instances,
                          const std::map<std::string, TokenSeq>& generations,
                          const ParentConfig& config) {
  validate_config(config);
  if (instances.empty()) throw ValidationError("cannot score an empty corpus");

  std::set<std::string_view> ids;
  std::vector<std::string> duplicates;
  for (const auto& instance : instances) {
    if (instance.id.empty()) throw ValidationError("instance with an empty id");
    if (!ids.insert(instance.id).second) duplicates.push_back(instance.id);
  }
  if (!duplicates.empty())
    throw ValidationError("duplicate instance ids: " + join_ids(duplicates));

  std::vector<std::string> missing;
  for (const auto& instance : instances)
    if (!generations.contains(instance.id)) missing.push_back(instance.id);
  if (!missing.empty())
    throw ValidationError("no generation for " + std::to_string(missing.size()) +
                          " instance(s): " + join_ids(missing));
  std::vector<std::string> extras;
  for (const auto& [id, tokens] : generations)
    if (!ids.contains(id)) extras.push_back(id);
  if (!extras.empty())
    throw ValidationError("generations for " + std::to_string(extras.size()) +
                          " unknown id(s): " + join_ids(extras));

  std::vector<ParentScore> scores(instances.size());
  const auto score_range = [&](std::size_t begin, std::size_t end, std::exception_ptr& error) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        const auto& instance = instances[i];
        scores[i] = score_instance(instance.table, instance.reference,
                                   generations.at(instance.id), config, instance.id);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, instances.size()));

  if (workers <= 1) {
    std::exception_ptr error;
    score_range(0, instances.size(), error);
    if (error) std::rethrow_exception(error);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t n = instances.size();
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      threads.emplace_back(score_range, begin, end, std::ref(errors[w]));
    }
    for (auto& thread : threads) thread.join();
    for (const auto& error : errors)
      if (error) std::rethrow_exception(error);
  }

  // Reduce in instance order, off the worker threads, so the mean never
  // depends on scheduling.
  KahanSum precision;
  KahanSum recall;
  KahanSum f1;
  for (const auto& score : scores) {
    precision.add(score.precision);
    recall.add(score.recall);
    f1.add(score.f1);
  }
  const auto count = static_cast<double>(scores.size());
  return {precision.sum / count, recall.sum / count, f1.sum / count, scores.size()};
}

}  // namespace d2t
