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

#include "ctxgr/mock_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctxgr/error.hpp"
#include "ctxgr/random.hpp"

namespace ctxgr {
namespace {

// Docid distribution of one route: weights sum to 1.
struct RouteDistribution {
  std::vector<const TokenSeq*> paths;
  std::vector<double> weights;
};

std::vector<double> softmax(std::span<const double> scores, double temperature) {
  std::vector<double> w(scores.size());
  if (scores.empty()) return w;
  const double hi = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp((scores[i] - hi) / temperature);
    z += w[i];
  }
  for (auto& x : w) x /= z;
  return w;
}

QueryRecord as_query(const Prompt& prompt) {
  return QueryRecord{prompt.query_id, prompt.query_text, {}};
}

}  // namespace

void MockModelConfig::validate() const {
  if (!(copy_temperature > 0.0) || !std::isfinite(copy_temperature)) {
    throw Error(ErrorCode::kConfig, "copy_temperature must be > 0");
  }
  if (!std::isfinite(route_bias)) {
    throw Error(ErrorCode::kConfig, "route_bias must be finite");
  }
  if (!(noise_stddev >= 0.0)) {
    throw Error(ErrorCode::kConfig, "noise_stddev must be >= 0");
  }
}

nlohmann::json MockModelConfig::to_json() const {
  nlohmann::json j = {{"copy_temperature", copy_temperature},
                      {"route_bias", route_bias},
                      {"noise_stddev", noise_stddev}};
  j["noise_seed"] = noise_seed ? nlohmann::json(*noise_seed) : nlohmann::json();
  return j;
}

MockModelConfig MockModelConfig::from_json(const nlohmann::json& j) {
  MockModelConfig cfg;
  try {
    cfg.copy_temperature = j.value("copy_temperature", cfg.copy_temperature);
    cfg.route_bias = j.value("route_bias", cfg.route_bias);
    cfg.noise_stddev = j.value("noise_stddev", cfg.noise_stddev);
    if (auto it = j.find("noise_seed"); it != j.end() && !it->is_null()) {
      cfg.noise_seed = it->get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("mock config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ParametricMemory::ParametricMemory(const Corpus& corpus,
                                   const CorpusSplit& split) {
  for (const auto& id : split.train_ids()) {
    docs_.push_back(corpus.index_of(id).value());
    ids_.push_back(id);
  }
}

class MockSession final : public ScoringSession {
 public:
  MockSession(const MockModel& model, const Prompt& prompt)
      : ScoringSession(model.vocab_size()) {
    const QueryRecord query = as_query(prompt);

    std::vector<std::size_t> cand_docs;
    for (const auto& id : prompt.candidate_ids) {
      cand_docs.push_back(model.corpus_.index_of(id).value());
    }
    std::vector<double> cand_sims(cand_docs.size());
    model.similarity_.query_docs(query, cand_docs, cand_sims);
    for (std::size_t i = 0; i < cand_docs.size(); ++i) {
      cand_sims[i] = model.noisy(cand_sims[i], prompt.query_id, cand_docs[i]);
    }

    const auto& mem_docs = model.memory_.doc_indices();
    std::vector<double> mem_sims(mem_docs.size());
    model.similarity_.query_docs(query, mem_docs, mem_sims);
    for (std::size_t i = 0; i < mem_docs.size(); ++i) {
      mem_sims[i] = model.noisy(mem_sims[i], prompt.query_id, mem_docs[i]);
    }

    const double temp = model.config_.copy_temperature;
    copy_.weights = softmax(cand_sims, temp);
    for (auto d : cand_docs) copy_.paths.push_back(&model.encoded_[d]);
    memory_.weights = softmax(mem_sims, temp);
    for (auto d : mem_docs) memory_.paths.push_back(&model.encoded_[d]);

    const double best_cand =
        cand_sims.empty() ? 0.0 : *std::max_element(cand_sims.begin(), cand_sims.end());
    const double best_mem =
        mem_sims.empty() ? 0.0 : *std::max_element(mem_sims.begin(), mem_sims.end());
    if (cand_sims.empty()) {
      copy_prob_ = 0.0;
    } else if (mem_sims.empty()) {
      copy_prob_ = 1.0;
    } else {
      copy_prob_ = logistic(model.config_.route_bias +
                            MockModelConfig::kRouteScale * (best_cand - best_mem));
    }
    analysis_.best_candidate_similarity = best_cand;
    analysis_.best_memory_similarity = best_mem;
    analysis_.copy_probability = copy_prob_;
    if (!mem_sims.empty()) {
      analysis_.best_memory_doc =
          mem_docs[static_cast<std::size_t>(
              std::max_element(mem_sims.begin(), mem_sims.end()) - mem_sims.begin())];
    }
  }

  const RouteAnalysis& analysis() const { return analysis_; }

  void next_logprobs(std::span<const TokenId> generated,
                     std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    if (generated.empty()) {
      out[kCopyId] += copy_prob_;
      accumulate(memory_, {}, 1.0 - copy_prob_, out);
    } else if (generated.front() == kCopyId) {
      accumulate(copy_, generated.subspan(1), 1.0, out);
    } else {
      accumulate(memory_, generated, 1.0, out);
    }
    // Floor off-path tokens, then renormalize.
    double z = 0.0;
    std::size_t floored = 0;
    for (double p : out) {
      if (p > 0.0) {
        z += p;
      } else {
        ++floored;
      }
    }
    z += static_cast<double>(floored) * MockModelConfig::kFloorProb;
    const double log_z = std::log(z);
    const double log_floor = std::log(MockModelConfig::kFloorProb) - log_z;
    for (auto& p : out) p = p > 0.0 ? std::log(p) - log_z : log_floor;
  }

 private:
  // Adds scale * P(next token | prefix) under `route` into `out`.
  static void accumulate(const RouteDistribution& route,
                         std::span<const TokenId> prefix, double scale,
                         std::span<double> out) {
    if (scale <= 0.0) return;
    double mass = 0.0;
    for (std::size_t i = 0; i < route.paths.size(); ++i) {
      const TokenSeq& path = *route.paths[i];
      if (path.size() <= prefix.size() ||
          !std::equal(prefix.begin(), prefix.end(), path.begin())) {
        continue;
      }
      mass += route.weights[i];
    }
    if (mass <= 0.0) return;
    for (std::size_t i = 0; i < route.paths.size(); ++i) {
      const TokenSeq& path = *route.paths[i];
      if (path.size() <= prefix.size() ||
          !std::equal(prefix.begin(), prefix.end(), path.begin())) {
        continue;
      }
      out[path[prefix.size()]] += scale * route.weights[i] / mass;
    }
  }

  RouteDistribution copy_;
  RouteDistribution memory_;
  double copy_prob_ = 0.0;
  RouteAnalysis analysis_;
};

MockModel::MockModel(const Corpus& corpus, const Vocabulary& vocab,
                     const ParametricMemory& memory,
                     const SimilarityBackend& similarity, MockModelConfig config)
    : corpus_(corpus),
      vocab_(vocab),
      memory_(memory),
      similarity_(similarity),
      config_(config) {
  config_.validate();
  encoded_.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) {
    encoded_.push_back(vocab.encode_docid(doc.doc_id));
    doc_hashes_.push_back(stable_hash(doc.doc_id));
  }
}

std::unique_ptr<ScoringSession> MockModel::bind(const Prompt& prompt) const {
  return std::make_unique<MockSession>(*this, prompt);
}

RouteAnalysis MockModel::analyze(const Prompt& prompt) const {
  return MockSession(*this, prompt).analysis();
}

double MockModel::noisy(double sim, const std::string& query_id,
                        std::size_t doc) const {
  if (!config_.noise_seed || config_.noise_stddev == 0.0) return sim;
  const std::uint64_t key =
      mix_seed(*config_.noise_seed,
               mix_seed(stable_hash(query_id), doc_hashes_[doc]));
  return sim + config_.noise_stddev * hashed_normal(key);
}

}  // namespace ctxgr
