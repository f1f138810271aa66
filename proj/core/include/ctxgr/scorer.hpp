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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ctxgr/tokenizer.hpp"

namespace ctxgr {

// What an autoregressive scorer conditions on. `tokens` is the encoded
// rendered template; the structured fields carry the same information for
// scorers that do not read raw text.
struct Prompt {
  std::string query_id;
  std::string query_text;
  std::vector<std::string> candidate_ids;
  TokenSeq tokens;
};

// A scorer bound to one prompt.
class ScoringSession {
 public:
  explicit ScoringSession(std::size_t vocab_size) : vocab_size_(vocab_size) {}
  virtual ~ScoringSession() = default;

  std::size_t vocab_size() const { return vocab_size_; }

  // Writes log p(t | prompt, generated) for every t in the vocabulary into
  // `out` (size vocab_size). Must sum to 1 in probability space and be
  // deterministic.
  virtual void next_logprobs(std::span<const TokenId> generated,
                             std::span<double> out) const = 0;

 private:
  std::size_t vocab_size_;
};

// Token scoring contract standing in for the retrieval model.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual std::size_t vocab_size() const = 0;
  virtual std::unique_ptr<ScoringSession> bind(const Prompt& prompt) const = 0;
};

std::vector<double> next_logprobs(const Scorer& scorer, const Prompt& prompt,
                                  std::span<const TokenId> generated);

// -sum_t log p(target_t | prompt, context, target_<t). `context` is an
// already generated prefix, so nll(a ++ b) == nll(a) + nll(b | context = a).
double sequence_nll(const ScoringSession& session,
                    std::span<const TokenId> target,
                    std::span<const TokenId> context = {});
double sequence_nll(const Scorer& scorer, const Prompt& prompt,
                    std::span<const TokenId> target);

// Uniform over the vocabulary at every step.
class UniformScorer final : public Scorer {
 public:
  explicit UniformScorer(std::size_t vocab_size) : vocab_size_(vocab_size) {}

  std::size_t vocab_size() const override { return vocab_size_; }
  std::unique_ptr<ScoringSession> bind(const Prompt& prompt) const override;

 private:
  std::size_t vocab_size_;
};

// Numerically stable log(sum(exp(x_i))) over the given entries of `logp`.
double log_sum_exp(std::span<const double> logp,
                   std::span<const TokenId> indices);

double logistic(double x);

}  // namespace ctxgr
