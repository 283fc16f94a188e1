#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "d2t/text.hpp"

namespace {

using namespace d2t;

std::string sample_text(std::size_t tokens) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> word(0, 9999);
  std::string text;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (i) text += ' ';
    text += "Word" + std::to_string(word(rng));
  }
  return text;
}

TokenSeq sample_tokens(std::size_t count, int vocab, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, vocab - 1);
  TokenSeq tokens;
  tokens.reserve(count);
  for (std::size_t i = 0; i < count; ++i) tokens.push_back("w" + std::to_string(pick(rng)));
  return tokens;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = sample_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(32)->Arg(256)->Arg(2048);

void BM_NgramCounts(benchmark::State& state) {
  const TokenSeq tokens = sample_tokens(512, 50, 23);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ngram_counts(tokens, order));
}
BENCHMARK(BM_NgramCounts)->DenseRange(1, 4);

void BM_LcsLength(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const TokenSeq a = sample_tokens(size, 20, 31);
  const TokenSeq b = sample_tokens(size, 20, 37);
  for (auto _ : state) benchmark::DoNotOptimize(lcs_length(a, b));
}
BENCHMARK(BM_LcsLength)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
