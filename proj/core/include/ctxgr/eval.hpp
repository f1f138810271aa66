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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/bm25.hpp"
#include "ctxgr/corpus.hpp"
#include "ctxgr/decoder.hpp"
#include "ctxgr/metrics.hpp"
#include "ctxgr/scorer.hpp"
#include "ctxgr/similarity.hpp"
#include "ctxgr/string_hash.hpp"
#include "ctxgr/tokenizer.hpp"
#include "ctxgr/trie.hpp"

namespace ctxgr {

inline constexpr std::size_t kDefaultShots = 100;
inline constexpr std::size_t kDefaultBeamWidth = 10;
inline constexpr std::size_t kDefaultHardNegatives = 100;

enum class EvalSplit { kTrain, kNew };
enum class Condition { kContext, kNoise };

std::string_view to_string(EvalSplit split);
std::string_view to_string(Condition condition);

// Read-only state shared by every evaluated query: the corpus, its split, the
// global trie over the initially indexed documents, and hard negatives for
// each of those documents.
class EvalWorld {
 public:
  // Mines hard negatives for every train document with `similarity`.
  EvalWorld(const Corpus& corpus, const Vocabulary& vocab,
            const CorpusSplit& split, const SimilarityBackend& similarity,
            std::size_t hard_negative_k = kDefaultHardNegatives);
  // Uses precomputed hard negatives (docid -> ranked negatives).
  EvalWorld(const Corpus& corpus, const Vocabulary& vocab,
            const CorpusSplit& split,
            StringMap<std::vector<std::string>> hard_negatives);

  const Corpus& corpus() const { return corpus_; }
  const Vocabulary& vocab() const { return vocab_; }
  const CorpusSplit& split() const { return split_; }
  const DocidTrie& global_trie() const { return global_trie_; }
  const std::vector<std::size_t>& train_indices() const { return train_indices_; }
  // Throws Error(kNotFound) for documents without mined negatives.
  const std::vector<std::string>& hard_negatives(std::string_view doc_id) const;
  const StringMap<std::vector<std::string>>& all_hard_negatives() const {
    return hard_negatives_;
  }

 private:
  const Corpus& corpus_;
  const Vocabulary& vocab_;
  const CorpusSplit& split_;
  DocidTrie global_trie_;
  std::vector<std::size_t> train_indices_;
  StringMap<std::vector<std::string>> hard_negatives_;
};

// Hard negatives for every document of `pool`, mined within `pool`.
StringMap<std::vector<std::string>> mine_all_hard_negatives(
    const Corpus& corpus, const SimilarityBackend& similarity,
    std::span<const std::size_t> pool, std::size_t k);

// Gold plus n - 1 distinct seeded-uniform non-gold members of `new_ids`, gold
// at a seeded-uniform slot. Distractors for a smaller n are a subset of those
// for a larger n under the same (query, seed).
std::vector<std::string> build_query_candidate_set(
    const QueryRecord& query, std::span<const std::string> new_ids,
    std::size_t n, std::uint64_t seed);

// One query under one context condition.
struct EvalItem {
  const QueryRecord* query = nullptr;
  EvalSplit split = EvalSplit::kNew;
  Condition condition = Condition::kContext;
  std::vector<std::string> candidates;  // the in-context set D_q

  bool gold_in_context() const;
};

// Adaptation queries get one context item; retention queries get a context
// item and a noise item built from hard negatives of their gold document.
std::vector<EvalItem> make_eval_items(const EvalWorld& world,
                                      std::span<const QueryRecord> retention,
                                      std::span<const QueryRecord> adaptation,
                                      std::size_t n_shots, std::uint64_t seed);

struct RetrievalOutcome {
  std::vector<std::string> ranked;      // best first, at most beam width
  std::optional<Route> top_route;       // routed systems only
  std::optional<double> copy_confidence;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  DecodeTiming timing;
};

class Retriever {
 public:
  virtual ~Retriever() = default;

  virtual std::string_view name() const = 0;
  virtual bool routes() const = 0;
  virtual RetrievalOutcome retrieve(const EvalItem& item) const = 0;
  // Every docid the system could return for `item`, sorted.
  virtual std::vector<std::string> search_space(const EvalItem& item) const = 0;
};

// In-context generative retrieval: mock or real scorer behind the
// router-aware constrained decoder.
class IcicleRetriever final : public Retriever {
 public:
  IcicleRetriever(const EvalWorld& world, const Scorer& scorer,
                  std::size_t beam_width = kDefaultBeamWidth);

  std::string_view name() const override { return "icicle"; }
  bool routes() const override { return true; }
  RetrievalOutcome retrieve(const EvalItem& item) const override;
  std::vector<std::string> search_space(const EvalItem& item) const override;

 private:
  const EvalWorld& world_;
  const Scorer& scorer_;
  std::size_t beam_width_;
};

// BM25 over the query's shared search space D_train plus D_q.
class Bm25Retriever final : public Retriever {
 public:
  Bm25Retriever(const EvalWorld& world, const Bm25Collection& collection,
                std::size_t depth = kDefaultBeamWidth);

  std::string_view name() const override { return "bm25"; }
  bool routes() const override { return false; }
  RetrievalOutcome retrieve(const EvalItem& item) const override;
  std::vector<std::string> search_space(const EvalItem& item) const override;

 private:
  std::vector<std::size_t> space_indices(const EvalItem& item) const;

  const EvalWorld& world_;
  const Bm25Collection& collection_;
  std::size_t depth_;
};

struct EvalConfig {
  std::size_t n_shots = kDefaultShots;
  std::size_t beam_width = kDefaultBeamWidth;
  std::uint64_t seed = 0;
  std::size_t ece_bins = kDefaultEceBins;
  // Wall-clock fields are left empty unless set; they are the only
  // non-deterministic part of a report.
  bool measure_latency = false;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct HitsAtK {
  double hits_at_1 = 0.0;
  double hits_at_10 = 0.0;
  std::size_t count = 0;
};

struct RoutingMetrics {
  double routing_recall = 0.0;  // P(top-1 route = copy) on context items
  double hit_given_copy = 0.0;  // P(top-1 correct | top-1 route = copy)
  std::size_t context_items = 0;
  std::size_t copies = 0;
};

struct SplitMetrics {
  HitsAtK overall;
  std::map<std::string, HitsAtK> conditions;
  std::optional<RoutingMetrics> routing;
};

// Fractions of all evaluated items.
struct ErrorTaxonomy {
  double emit_and_miss = 0.0;   // top-1 took the copy route and is wrong
  double wrong_ctx_copy = 0.0;  // gold in context, a different doc copied
  double spurious_copy = 0.0;   // gold not in context, copy route taken
  double miss_rate = 0.0;       // equals emit_and_miss
  std::size_t count = 0;
};

struct LatencyRecord {
  double mean_input_tokens = 0.0;
  std::optional<double> mean_ttft_seconds;
  std::optional<double> mean_total_seconds;
  std::optional<double> throughput_tokens_per_second;
  std::size_t count = 0;
};

struct QueryRow {
  std::string query_id;
  EvalSplit split = EvalSplit::kNew;
  Condition condition = Condition::kContext;
  std::optional<std::size_t> rank_of_gold;  // 1-based
  std::optional<Route> route;
  std::optional<double> copy_confidence;
};

struct EvalReport {
  std::string system;
  EvalConfig config;
  SplitMetrics train;
  SplitMetrics fresh;  // queries whose gold arrived after indexing
  std::optional<double> ece;
  std::optional<double> routing_recall;  // adaptation context items
  std::optional<double> hit_given_copy;
  std::optional<ErrorTaxonomy> error_taxonomy;
  LatencyRecord latency;
  std::vector<QueryRow> rows;
};

EvalReport evaluate(const Retriever& system, const EvalWorld& world,
                    std::span<const QueryRecord> retention,
                    std::span<const QueryRecord> adaptation,
                    const EvalConfig& config);

// One report per shot count; `shots` must be ascending. Candidate pools are
// nested across shot counts.
std::vector<EvalReport> shot_sweep(const Retriever& system,
                                   const EvalWorld& world,
                                   std::span<const QueryRecord> retention,
                                   std::span<const QueryRecord> adaptation,
                                   std::span<const std::size_t> shots,
                                   const EvalConfig& config);

// Timed run over the adaptation context items at `n_shots`.
LatencyRecord latency_probe(const Retriever& system, const EvalWorld& world,
                            std::span<const QueryRecord> queries,
                            std::size_t n_shots, std::uint64_t seed);

// Report JSON. `timestamp` is omitted when empty.
nlohmann::json report_to_json(const EvalReport& report,
                              std::string_view dataset,
                              std::string_view timestamp);

// CSV with header qid,split,condition,rank_of_gold,route,s.
void write_rows_csv(const EvalReport& report, std::ostream& out);

}  // namespace ctxgr
