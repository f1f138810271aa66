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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/decoder.hpp"
#include "ctxgr/prompt.hpp"
#include "ctxgr/scorer.hpp"

namespace ctxgr {

enum class PairKind { kRankingFailure, kRoutingFailure };

std::string_view to_string(PairKind kind);

struct PreferencePair {
  std::string query_id;
  TokenSeq chosen;
  TokenSeq rejected;
  PairKind kind = PairKind::kRankingFailure;
};

struct DecodedInstance {
  const InContextInstance* instance = nullptr;
  const DecodeResult* result = nullptr;
};

// Ranking failure: gold is in the top `beam_width` entries but not first;
// chosen = gold's decoded path, rejected = the rank-1 path.
// Routing failure: a context-dependent instance whose rank-1 entry is an
// incorrect parametric docid; chosen = [COPY] ++ gold, rejected = that path.
// At most one pair of each kind per instance.
std::vector<PreferencePair> mine_pairs(std::span<const DecodedInstance> results,
                                       std::size_t beam_width);

inline constexpr double kDefaultDpoBeta = 0.1;

// -log sigmoid(beta * ((pol_c - ref_c) - (pol_r - ref_r))), via softplus.
double dpo_loss(double logp_policy_chosen, double logp_ref_chosen,
                double logp_policy_rejected, double logp_ref_rejected,
                double beta);

// dpo_loss with the four sequence log-probabilities scored on the same prompt.
double pair_margin(const Scorer& policy, const Scorer& reference,
                   const PreferencePair& pair, const Prompt& prompt,
                   double beta);

nlohmann::json pair_to_json(const PreferencePair& pair);

}  // namespace ctxgr
