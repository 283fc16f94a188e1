#include <map>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "d2t/parent.hpp"

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

Instance random_instance(std::mt19937& rng, std::string id) {
  Instance instance;
  instance.id = std::move(id);
  std::uniform_int_distribution<std::size_t> records(1, 6);
  const std::size_t count = records(rng);
  for (std::size_t i = 0; i < count; ++i)
    instance.table.records.push_back({random_tokens(rng, 1, 2), random_tokens(rng, 1, 6)});
  instance.reference = random_tokens(rng, 10, 40);
  instance.generation = random_tokens(rng, 10, 40);
  return instance;
}

struct CorpusData {
  std::vector<Instance> instances;
  std::map<std::string, TokenSeq> generations;
};

const CorpusData& corpus_data() {
  static const CorpusData data = [] {
    CorpusData built;
    std::mt19937 rng(533);
    for (int i = 0; i < 1000; ++i) {
      Instance instance = random_instance(rng, "b" + std::to_string(i));
      built.generations.emplace(instance.id, instance.generation);
      built.instances.push_back(std::move(instance));
    }
    return built;
  }();
  return data;
}

void BM_ParentInstance(benchmark::State& state) {
  std::mt19937 rng(101);
  const Instance instance = random_instance(rng, "one");
  for (auto _ : state) benchmark::DoNotOptimize(parent_instance(instance));
}
BENCHMARK(BM_ParentInstance);

void BM_ParentCorpus(benchmark::State& state) {
  const CorpusData& data = corpus_data();
  ParentConfig config;
  config.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(parent_corpus(data.instances, data.generations, config));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(data.instances.size()));
}
BENCHMARK(BM_ParentCorpus)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
