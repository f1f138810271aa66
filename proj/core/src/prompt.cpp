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

#include "ctxgr/prompt.hpp"

#include <algorithm>
#include <numeric>

#include "ctxgr/error.hpp"
#include "ctxgr/random.hpp"

namespace ctxgr {
namespace {

TokenSeq copy_target(const Vocabulary& vocab, std::string_view gold) {
  TokenSeq target{kCopyId};
  const TokenSeq path = vocab.encode_docid(gold);
  target.insert(target.end(), path.begin(), path.end());
  return target;
}

void reject_gold_among(std::span<const std::string> items, std::size_t n,
                       const QueryRecord& query) {
  const auto end = items.begin() + static_cast<std::ptrdiff_t>(std::min(n, items.size()));
  if (std::find(items.begin(), end, query.gold_doc_id) != end) {
    throw Error(ErrorCode::kInvalidInput,
                "gold \"" + query.gold_doc_id + "\" of query " + query.query_id +
                    " found among negatives");
  }
}

std::uint64_t position_seed(std::uint64_t seed, const QueryRecord& query) {
  return mix_seed(seed, stable_hash(query.query_id));
}

}  // namespace

const std::string_view kSystemInstruction =
    "Given a query and a list of candidate documents, retrieve the title of "
    "the most relevant document. If the relevant document appears in the "
    "candidate list, output [COPY] followed by its title. Otherwise, output "
    "the title from memory directly.";

std::string_view to_string(InstanceMode mode) {
  return mode == InstanceMode::kContextDependent ? "context_dependent"
                                                 : "query_irrelevant";
}

InstanceMode instance_mode_from_string(std::string_view s) {
  if (s == "context_dependent") return InstanceMode::kContextDependent;
  if (s == "query_irrelevant") return InstanceMode::kQueryIrrelevant;
  throw Error(ErrorCode::kInvalidInput, "unknown instance mode \"" + std::string(s) + "\"");
}

std::vector<std::string> InContextInstance::candidate_ids() const {
  std::vector<std::string> ids;
  ids.reserve(candidates.size());
  for (const auto& c : candidates) ids.push_back(c.doc_id);
  return ids;
}

std::string display_text(const Document& doc) {
  if (doc.compressed_text) return *doc.compressed_text;
  return std::string(truncate_words(doc.text, kMaxDisplayTokens));
}

std::vector<std::string> mine_hard_negatives(const Corpus& corpus,
                                             const SimilarityBackend& similarity,
                                             std::span<const std::size_t> pool,
                                             std::string_view doc_id,
                                             std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kConfig, "hard negatives: k must be >= 1");
  const std::size_t anchor = corpus.index_of(doc_id).value_or(corpus.size());
  if (anchor == corpus.size()) {
    throw Error(ErrorCode::kNotFound, "hard negatives: unknown doc \"" +
                                          std::string(doc_id) + "\"");
  }
  struct Scored {
    double sim;
    std::size_t doc;
  };
  std::vector<Scored> scored;
  scored.reserve(pool.size());
  for (std::size_t d : pool) {
    if (d != anchor) scored.push_back({similarity.doc_doc(anchor, d), d});
  }
  if (k > scored.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "hard negatives: k = " + std::to_string(k) + " exceeds the " +
                    std::to_string(scored.size()) + " eligible documents");
  }
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                    scored.end(), [](const Scored& a, const Scored& b) {
                      if (a.sim != b.sim) return a.sim > b.sim;
                      return a.doc < b.doc;
                    });
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(corpus.doc(scored[i].doc).doc_id);
  return out;
}

std::vector<std::string> sample_without_replacement(
    std::span<const std::string> pool, std::size_t count, std::uint64_t seed) {
  if (count > pool.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "cannot draw " + std::to_string(count) + " of " +
                    std::to_string(pool.size()) + " items");
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.partial_shuffle(std::span(order), count);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[order[i]]);
  return out;
}

InContextInstance build_context_dependent(const Corpus& corpus,
                                          const Vocabulary& vocab,
                                          const QueryRecord& query,
                                          std::span<const std::string> negatives,
                                          std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kConfig, "instance size n must be >= 1");
  if (negatives.size() + 1 < n) {
    throw Error(ErrorCode::kInvalidInput,
                "query " + query.query_id + ": need " + std::to_string(n - 1) +
                    " negatives, have " + std::to_string(negatives.size()));
  }
  reject_gold_among(negatives, n - 1, query);

  Rng rng(position_seed(seed, query));
  const auto pos = static_cast<std::size_t>(rng.below(n));

  InContextInstance inst;
  inst.query = query;
  inst.mode = InstanceMode::kContextDependent;
  inst.seed = seed;
  inst.gold_position = pos;
  inst.candidates.reserve(n);
  std::size_t next_negative = 0;
  for (std::size_t slot = 0; slot < n; ++slot) {
    const std::string& id =
        slot == pos ? query.gold_doc_id : negatives[next_negative++];
    inst.candidates.push_back({id, display_text(corpus.at(id))});
  }
  inst.supervision_target = copy_target(vocab, query.gold_doc_id);
  return inst;
}

InContextInstance build_query_irrelevant(const Corpus& corpus,
                                         const Vocabulary& vocab,
                                         const QueryRecord& query,
                                         std::span<const std::string> negatives,
                                         std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kConfig, "instance size n must be >= 1");
  if (negatives.size() < n) {
    throw Error(ErrorCode::kInvalidInput,
                "query " + query.query_id + ": need " + std::to_string(n) +
                    " negatives, have " + std::to_string(negatives.size()));
  }
  reject_gold_among(negatives, n, query);

  InContextInstance inst;
  inst.query = query;
  inst.mode = InstanceMode::kQueryIrrelevant;
  for (std::size_t i = 0; i < n; ++i) {
    inst.candidates.push_back({negatives[i], display_text(corpus.at(negatives[i]))});
  }
  inst.supervision_target = vocab.encode_docid(query.gold_doc_id);
  return inst;
}

InContextInstance build_title_only_context(const Vocabulary& vocab,
                                           const QueryRecord& query,
                                           std::span<const std::string> doc_ids,
                                           std::size_t k, bool with_gold,
                                           std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::kConfig, "title context size must be >= 1");
  const std::size_t needed = with_gold ? k - 1 : k;
  if (doc_ids.size() < needed) {
    throw Error(ErrorCode::kInvalidInput,
                "title context: need " + std::to_string(needed) + " titles, have " +
                    std::to_string(doc_ids.size()));
  }
  reject_gold_among(doc_ids, needed, query);

  InContextInstance inst;
  inst.query = query;
  inst.seed = seed;
  if (!with_gold) {
    inst.mode = InstanceMode::kQueryIrrelevant;
    for (std::size_t i = 0; i < k; ++i) inst.candidates.push_back({doc_ids[i], {}});
    inst.supervision_target = vocab.encode_docid(query.gold_doc_id);
    return inst;
  }
  Rng rng(position_seed(seed, query));
  const auto pos = static_cast<std::size_t>(rng.below(k));
  inst.mode = InstanceMode::kContextDependent;
  inst.gold_position = pos;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    inst.candidates.push_back({slot == pos ? query.gold_doc_id : doc_ids[next++], {}});
  }
  inst.supervision_target = copy_target(vocab, query.gold_doc_id);
  return inst;
}

InContextInstance instance_from_candidates(const Corpus& corpus,
                                           const Vocabulary& vocab,
                                           const QueryRecord& query,
                                           std::span<const std::string> candidate_ids,
                                           std::uint64_t seed) {
  InContextInstance inst;
  inst.query = query;
  inst.seed = seed;
  inst.candidates.reserve(candidate_ids.size());
  for (std::size_t i = 0; i < candidate_ids.size(); ++i) {
    const auto& id = candidate_ids[i];
    if (id == query.gold_doc_id) {
      if (inst.gold_position) {
        throw Error(ErrorCode::kInvalidInput,
                    "gold listed twice in candidates of " + query.query_id);
      }
      inst.gold_position = i;
    }
    inst.candidates.push_back({id, display_text(corpus.at(id))});
  }
  if (inst.gold_position) {
    inst.mode = InstanceMode::kContextDependent;
    inst.supervision_target = copy_target(vocab, query.gold_doc_id);
  } else {
    inst.mode = InstanceMode::kQueryIrrelevant;
    inst.supervision_target = vocab.encode_docid(query.gold_doc_id);
  }
  return inst;
}

std::string render_template(const InContextInstance& instance) {
  std::string out(kSystemInstruction);
  out += "\n\nCandidates:\n";
  for (std::size_t i = 0; i < instance.candidates.size(); ++i) {
    const auto& c = instance.candidates[i];
    out += '[';
    out += std::to_string(i + 1);
    out += "] ";
    if (!c.display_text.empty()) {
      out += c.display_text;
      out += '\n';
    }
    out += "Title: ";
    out += c.doc_id;
    out += '\n';
  }
  out += "Query: ";
  out += instance.query.text;
  out += "\nOutput:";
  return out;
}

std::size_t template_token_budget(const InContextInstance& instance) {
  // Instruction, "Candidates", "Query" and "Output".
  static const std::size_t fixed = count_words(kSystemInstruction) + 3;
  std::size_t total = fixed + count_words(instance.query.text);
  for (const auto& c : instance.candidates) {
    total += kPerItemOverheadTokens + count_words(c.display_text) +
             count_words(c.doc_id);
  }
  return total;
}

Prompt make_prompt(const InContextInstance& instance, const Vocabulary& vocab) {
  Prompt p;
  p.query_id = instance.query.query_id;
  p.query_text = instance.query.text;
  p.candidate_ids = instance.candidate_ids();
  p.tokens = vocab.encode(render_template(instance));
  return p;
}

nlohmann::json instance_to_json(const InContextInstance& instance) {
  nlohmann::json j = {{"qid", instance.query.query_id},
                      {"mode", to_string(instance.mode)},
                      {"candidate_ids", instance.candidate_ids()},
                      {"seed", instance.seed}};
  if (instance.gold_position) j["gold_position"] = *instance.gold_position;
  return j;
}

InContextInstance instance_from_json(const nlohmann::json& j,
                                     const Corpus& corpus,
                                     const Vocabulary& vocab,
                                     const StringMap<QueryRecord>& queries) {
  try {
    const auto qid = j.at("qid").get<std::string>();
    auto qit = queries.find(qid);
    if (qit == queries.end()) {
      throw Error(ErrorCode::kNotFound, "instance references unknown qid " + qid);
    }
    InContextInstance inst;
    inst.query = qit->second;
    inst.mode = instance_mode_from_string(j.at("mode").get<std::string>());
    inst.seed = j.value("seed", std::uint64_t{0});
    for (const auto& id : j.at("candidate_ids")) {
      const auto s = id.get<std::string>();
      inst.candidates.push_back({s, display_text(corpus.at(s))});
    }
    std::optional<std::size_t> gold_slot;
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
      if (inst.candidates[i].doc_id == inst.query.gold_doc_id) gold_slot = i;
    }
    if (auto it = j.find("gold_position"); it != j.end() && !it->is_null()) {
      inst.gold_position = it->get<std::size_t>();
    }
    const bool ctx = inst.mode == InstanceMode::kContextDependent;
    if (inst.gold_position != gold_slot || ctx != gold_slot.has_value()) {
      throw Error(ErrorCode::kInvalidInput,
                  "instance for " + qid + ": mode and gold_position disagree");
    }
    inst.supervision_target = ctx ? copy_target(vocab, inst.query.gold_doc_id)
                                  : vocab.encode_docid(inst.query.gold_doc_id);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("instance record: ") + e.what());
  }
}

}  // namespace ctxgr
