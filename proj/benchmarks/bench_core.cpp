// Copyright 2026 The ctxgr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>

#include "ctxgr/bm25.hpp"
#include "ctxgr/corpus.hpp"
#include "ctxgr/decoder.hpp"
#include "ctxgr/eval.hpp"
#include "ctxgr/mock_model.hpp"
#include "ctxgr/prompt.hpp"
#include "ctxgr/similarity.hpp"
#include "ctxgr/synthetic.hpp"
#include "ctxgr/trie.hpp"

namespace {

using namespace ctxgr;

struct Fixture {
  Corpus corpus;
  std::vector<QueryRecord> queries;
  Vocabulary vocab;
  CorpusSplit split;
  QueryBuckets buckets;
  std::unique_ptr<TfIdfSimilarity> sim;
  std::unique_ptr<ParametricMemory> memory;
  std::unique_ptr<MockModel> model;
  DocidTrie global;

  Fixture() {
    auto data = make_synthetic({});
    corpus = std::move(data.corpus);
    queries = std::move(data.queries);
    vocab = build_vocab(corpus, queries);
    split = split_corpus(corpus, 0.1, 0);
    buckets = split_queries(queries, split);
    sim = std::make_unique<TfIdfSimilarity>(corpus);
    memory = std::make_unique<ParametricMemory>(corpus, split);
    model = std::make_unique<MockModel>(corpus, vocab, *memory, *sim, MockModelConfig{});
    global = build_trie(vocab, split.train_ids());
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_TrieBuild(benchmark::State& state) {
  auto& f = fixture();
  const auto& ids = f.split.train_ids();
  for (auto _ : state) benchmark::DoNotOptimize(build_trie(f.vocab, ids));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ids.size()));
}
BENCHMARK(BM_TrieBuild)->Unit(benchmark::kMillisecond);

void BM_AllowedTokens(benchmark::State& state) {
  auto& f = fixture();
  std::vector<TokenSeq> prefixes;
  for (const auto& id : f.split.train_ids()) {
    const auto enc = f.vocab.encode_docid(id);
    prefixes.emplace_back(enc.begin(), enc.begin() + 1);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.global.allowed_tokens(prefixes[i++ % prefixes.size()]));
  }
}
BENCHMARK(BM_AllowedTokens);

void BM_BeamSearch(benchmark::State& state) {
  auto& f = fixture();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& q = f.buckets.adaptation.front();
  const auto cands = build_query_candidate_set(q, f.split.new_ids(), n, 0);
  const auto prompt = make_prompt(instance_from_candidates(f.corpus, f.vocab, q, cands, 0), f.vocab);
  const auto ctx = build_context_trie(f.vocab, cands);
  for (auto _ : state) {
    benchmark::DoNotOptimize(constrained_beam_search(*f.model, prompt, f.global, ctx));
  }
}
BENCHMARK(BM_BeamSearch)->Arg(3)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Bm25Retrieve(benchmark::State& state) {
  auto& f = fixture();
  const Bm25Collection collection(f.corpus, f.vocab);
  std::vector<std::size_t> all(f.corpus.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const Bm25Index index(collection, all);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.retrieve(f.queries[i++ % f.queries.size()].text, 10));
  }
}
BENCHMARK(BM_Bm25Retrieve);

}  // namespace

BENCHMARK_MAIN();
