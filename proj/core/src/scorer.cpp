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

#include "ctxgr/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctxgr/error.hpp"

namespace ctxgr {
namespace {

class UniformSession final : public ScoringSession {
 public:
  explicit UniformSession(std::size_t v)
      : ScoringSession(v), logp_(-std::log(static_cast<double>(v))) {}

  void next_logprobs(std::span<const TokenId>,
                     std::span<double> out) const override {
    std::fill(out.begin(), out.end(), logp_);
  }

 private:
  double logp_;
};

}  // namespace

std::unique_ptr<ScoringSession> UniformScorer::bind(const Prompt&) const {
  return std::make_unique<UniformSession>(vocab_size_);
}

std::vector<double> next_logprobs(const Scorer& scorer, const Prompt& prompt,
                                  std::span<const TokenId> generated) {
  std::vector<double> out(scorer.vocab_size());
  scorer.bind(prompt)->next_logprobs(generated, out);
  return out;
}

double sequence_nll(const ScoringSession& session,
                    std::span<const TokenId> target,
                    std::span<const TokenId> context) {
  if (target.empty()) {
    throw Error(ErrorCode::kInvalidInput, "sequence_nll: empty target");
  }
  TokenSeq history(context.begin(), context.end());
  std::vector<double> logp(session.vocab_size());
  double nll = 0.0;
  for (TokenId t : target) {
    session.next_logprobs(history, logp);
    nll -= logp.at(t);
    history.push_back(t);
  }
  return nll;
}

double sequence_nll(const Scorer& scorer, const Prompt& prompt,
                    std::span<const TokenId> target) {
  if (target.empty()) {
    throw Error(ErrorCode::kInvalidInput, "sequence_nll: empty target");
  }
  return sequence_nll(*scorer.bind(prompt), target);
}

double log_sum_exp(std::span<const double> logp,
                   std::span<const TokenId> indices) {
  double hi = -std::numeric_limits<double>::infinity();
  for (TokenId i : indices) hi = std::max(hi, logp[i]);
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (TokenId i : indices) sum += std::exp(logp[i] - hi);
  return hi + std::log(sum);
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace ctxgr
