#include <random>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "d2t/bleu.hpp"

namespace {

using namespace d2t;

TokenSeq random_tokens(std::mt19937& rng, std::size_t min_length, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> length(min_length, max_length);
  std::uniform_int_distribution<int> pick(0, 199);
  TokenSeq tokens;
  const std::size_t size = length(rng);
  tokens.reserve(size);
  for (std::size_t i = 0; i < size; ++i) tokens.push_back("w" + std::to_string(pick(rng)));
  return tokens;
}

void BM_CorpusBleu(benchmark::State& state) {
  static const auto corpus = [] {
    std::mt19937 rng(733);
    std::vector<std::pair<TokenSeq, TokenSeq>> pairs;
    pairs.reserve(1000);
    for (int i = 0; i < 1000; ++i) {
      TokenSeq reference = random_tokens(rng, 10, 40);
      TokenSeq candidate = reference;
      // Perturb a fifth of the candidate tokens so clipping does real work.
      std::uniform_int_distribution<int> pick(0, 199);
      for (std::size_t k = 0; k < candidate.size(); k += 5)
        candidate[k] = "w" + std::to_string(pick(rng));
      pairs.emplace_back(std::move(candidate), std::move(reference));
    }
    return pairs;
  }();
  for (auto _ : state) benchmark::DoNotOptimize(corpus_bleu(corpus));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(corpus.size()));
}
BENCHMARK(BM_CorpusBleu)->Unit(benchmark::kMillisecond);

}  // namespace
