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

#include "ctxgr/dpo.hpp"

#include <cmath>

#include "ctxgr/error.hpp"

namespace ctxgr {

std::string_view to_string(PairKind kind) {
  return kind == PairKind::kRankingFailure ? "ranking_failure" : "routing_failure";
}

std::vector<PreferencePair> mine_pairs(std::span<const DecodedInstance> results,
                                       std::size_t beam_width) {
  std::vector<PreferencePair> pairs;
  for (const auto& r : results) {
    const auto& inst = *r.instance;
    const auto& entries = r.result->entries;
    if (entries.empty()) continue;
    const auto& gold = inst.query.gold_doc_id;
    const auto& top = entries.front();

    const auto rank = r.result->rank_of(gold);
    if (rank && *rank > 0 && *rank < beam_width) {
      pairs.push_back({inst.query.query_id, entries[*rank].token_path,
                       top.token_path, PairKind::kRankingFailure});
    }
    if (inst.mode == InstanceMode::kContextDependent &&
        top.route == Route::kParametric && top.doc_id != gold) {
      pairs.push_back({inst.query.query_id, inst.supervision_target,
                       top.token_path, PairKind::kRoutingFailure});
    }
  }
  return pairs;
}

double dpo_loss(double logp_policy_chosen, double logp_ref_chosen,
                double logp_policy_rejected, double logp_ref_rejected,
                double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorCode::kConfig, "dpo beta must be >= 0");
  const double x = beta * ((logp_policy_chosen - logp_ref_chosen) -
                           (logp_policy_rejected - logp_ref_rejected));
  // -log sigmoid(x) = softplus(-x)
  return std::log1p(std::exp(-std::abs(x))) + std::max(-x, 0.0);
}

double pair_margin(const Scorer& policy, const Scorer& reference,
                   const PreferencePair& pair, const Prompt& prompt,
                   double beta) {
  const double pc = -sequence_nll(policy, prompt, pair.chosen);
  const double rc = -sequence_nll(reference, prompt, pair.chosen);
  const double pr = -sequence_nll(policy, prompt, pair.rejected);
  const double rr = -sequence_nll(reference, prompt, pair.rejected);
  return dpo_loss(pc, rc, pr, rr, beta);
}

nlohmann::json pair_to_json(const PreferencePair& pair) {
  return {{"qid", pair.query_id},
          {"kind", to_string(pair.kind)},
          {"chosen_tokens", pair.chosen},
          {"rejected_tokens", pair.rejected}};
}

}  // namespace ctxgr
