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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/corpus.hpp"
#include "ctxgr/scorer.hpp"
#include "ctxgr/similarity.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {

enum class InstanceMode {
  kContextDependent,  // gold is among the candidates; target starts with [COPY]
  kQueryIrrelevant,   // candidates are all negatives; target is the bare docid
};

std::string_view to_string(InstanceMode mode);
InstanceMode instance_mode_from_string(std::string_view s);

struct Candidate {
  std::string doc_id;
  std::string display_text;  // empty for title-only contexts

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct InContextInstance {
  QueryRecord query;
  std::vector<Candidate> candidates;
  std::optional<std::size_t> gold_position;  // 0-based
  InstanceMode mode = InstanceMode::kQueryIrrelevant;
  TokenSeq supervision_target;
  std::uint64_t seed = 0;

  std::vector<std::string> candidate_ids() const;
  bool gold_in_context() const { return gold_position.has_value(); }
};

// Rendered template constants. Each candidate costs its display and title
// tokens plus the index marker and the "Title:" label.
inline constexpr std::size_t kPerItemOverheadTokens = 2;
extern const std::string_view kSystemInstruction;

// compressed_text when present, else the first kMaxDisplayTokens words of the
// body (original bytes).
std::string display_text(const Document& doc);

// Top-k documents of `pool` most similar to `doc_id`, the anchor excluded,
// ties by canonical corpus order. Throws if k exceeds the eligible pool.
std::vector<std::string> mine_hard_negatives(const Corpus& corpus,
                                             const SimilarityBackend& similarity,
                                             std::span<const std::size_t> pool,
                                             std::string_view doc_id,
                                             std::size_t k);

// `count` items drawn without replacement, in draw order. The draws for a
// smaller count are a prefix of the draws for a larger one.
std::vector<std::string> sample_without_replacement(
    std::span<const std::string> pool, std::size_t count, std::uint64_t seed);

// Gold at a seeded uniform slot among n; the other slots take the first n - 1
// negatives in order. Target is [COPY] ++ encode_docid(gold).
InContextInstance build_context_dependent(const Corpus& corpus,
                                          const Vocabulary& vocab,
                                          const QueryRecord& query,
                                          std::span<const std::string> negatives,
                                          std::size_t n, std::uint64_t seed);

// First n negatives; target is encode_docid(gold) without [COPY].
InContextInstance build_query_irrelevant(const Corpus& corpus,
                                         const Vocabulary& vocab,
                                         const QueryRecord& query,
                                         std::span<const std::string> negatives,
                                         std::size_t n);

// Identifier-only context of k titles drawn from the front of `doc_ids`.
// With `with_gold` the query's gold replaces one slot at a seeded position.
InContextInstance build_title_only_context(const Vocabulary& vocab,
                                           const QueryRecord& query,
                                           std::span<const std::string> doc_ids,
                                           std::size_t k, bool with_gold,
                                           std::uint64_t seed);

// Instance over an explicit candidate list; the mode follows from whether the
// gold docid is among the candidates.
InContextInstance instance_from_candidates(const Corpus& corpus,
                                           const Vocabulary& vocab,
                                           const QueryRecord& query,
                                           std::span<const std::string> candidate_ids,
                                           std::uint64_t seed);

std::string render_template(const InContextInstance& instance);

// Token count of the rendered template predicted from its parts:
//   fixed + sum_i(kPerItemOverheadTokens + |display_i| + |title_i|) + |query|.
std::size_t template_token_budget(const InContextInstance& instance);

Prompt make_prompt(const InContextInstance& instance, const Vocabulary& vocab);

nlohmann::json instance_to_json(const InContextInstance& instance);

// Rebuilds an instance from its batch-file record.
InContextInstance instance_from_json(const nlohmann::json& j,
                                     const Corpus& corpus,
                                     const Vocabulary& vocab,
                                     const StringMap<QueryRecord>& queries);

}  // namespace ctxgr
