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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/corpus.hpp"
#include "ctxgr/scorer.hpp"
#include "ctxgr/similarity.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {

struct MockModelConfig {
  // Sharpness of the softmax over candidate (and memory) similarities.
  double copy_temperature = 0.1;
  // Added to the routing logit.
  double route_bias = 0.0;
  // When set, every query-document similarity is perturbed by
  // noise_stddev * N(0, 1), drawn deterministically per (seed, qid, docid).
  std::optional<std::uint64_t> noise_seed;
  double noise_stddev = 0.1;

  // Slope of the routing logistic in the similarity gap.
  static constexpr double kRouteScale = 5.0;
  // Probability assigned to tokens off every supported path.
  static constexpr double kFloorProb = 1e-12;

  void validate() const;
  nlohmann::json to_json() const;
  static MockModelConfig from_json(const nlohmann::json& j);
};

// Emulated parametric memory: the training documents the model "indexed".
// Queries never modify it.
class ParametricMemory {
 public:
  ParametricMemory(const Corpus& corpus, const CorpusSplit& split);

  // Canonical corpus indices of the covered documents.
  const std::vector<std::size_t>& doc_indices() const { return docs_; }
  const std::vector<std::string>& doc_ids() const { return ids_; }
  std::size_t size() const { return docs_.size(); }

 private:
  std::vector<std::size_t> docs_;
  std::vector<std::string> ids_;
};

// Routing quantities the mock derives for a prompt.
struct RouteAnalysis {
  double best_candidate_similarity = 0.0;
  double best_memory_similarity = 0.0;
  double copy_probability = 0.0;  // logistic(bias + scale * (cand - mem))
  std::optional<std::size_t> best_memory_doc;  // canonical index
};

// Deterministic stand-in for the retrieval model.
//
// Step 0 puts probability s on [COPY] and distributes 1 - s over the first
// tokens of the memory docids, weighted by softmax(sim / T). After [COPY] the
// mass follows candidate docid paths weighted by softmax(sim / T); after any
// other first token it follows memory docid paths. Within a route the token
// distribution is the exact marginal of the docid distribution given the
// prefix, so the probability of a complete path equals its docid weight.
class MockModel final : public Scorer {
 public:
  MockModel(const Corpus& corpus, const Vocabulary& vocab,
            const ParametricMemory& memory, const SimilarityBackend& similarity,
            MockModelConfig config);

  std::size_t vocab_size() const override { return vocab_.size(); }
  std::unique_ptr<ScoringSession> bind(const Prompt& prompt) const override;

  RouteAnalysis analyze(const Prompt& prompt) const;
  const MockModelConfig& config() const { return config_; }

 private:
  friend class MockSession;

  double noisy(double sim, const std::string& query_id, std::size_t doc) const;

  const Corpus& corpus_;
  const Vocabulary& vocab_;
  const ParametricMemory& memory_;
  const SimilarityBackend& similarity_;
  MockModelConfig config_;
  std::vector<TokenSeq> encoded_;  // encode_docid for every corpus doc
  std::vector<std::uint64_t> doc_hashes_;
};

}  // namespace ctxgr
