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

#include "ctxgr/decoder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ctxgr/error.hpp"

namespace ctxgr {
namespace {

using Clock = std::chrono::steady_clock;

struct Hypothesis {
  TokenSeq path;
  double score = 0.0;
  Route route = Route::kParametric;
  const DocidTrie* trie = nullptr;
  DocidTrie::NodeId node = DocidTrie::kRoot;
};

bool ranks_before(double sa, const TokenSeq& pa, double sb, const TokenSeq& pb) {
  if (sa != sb) return sa > sb;
  return pa < pb;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Route route) {
  return route == Route::kCopy ? "copy" : "parametric";
}

std::optional<std::size_t> DecodeResult::rank_of(std::string_view doc_id) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].doc_id == doc_id) return i;
  }
  return std::nullopt;
}

DecodeResult constrained_beam_search(const Scorer& scorer, const Prompt& prompt,
                                     const DocidTrie& global_trie,
                                     const DocidTrie& context_trie,
                                     const DecodeOptions& options) {
  const std::size_t beam = options.beam_width;
  if (beam == 0) throw Error(ErrorCode::kConfig, "beam width must be >= 1");
  if (global_trie.empty() || context_trie.empty()) {
    throw Error(ErrorCode::kInvalidInput, "beam search needs non-empty tries");
  }

  const auto start = Clock::now();
  auto session = scorer.bind(prompt);
  std::vector<double> logp(scorer.vocab_size());
  std::size_t calls = 0;

  DecodeResult result;
  std::vector<Hypothesis> live;
  std::vector<Hypothesis> finished;
  std::vector<Hypothesis> expansions;
  std::vector<TokenId> allowed;

  auto emit_trace = [&](std::size_t step, std::size_t allowed_total) {
    if (!options.trace) return;
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& h : live) {
      kept.push_back({{"path", h.path}, {"score", h.score}, {"route", to_string(h.route)}});
    }
    *options.trace << nlohmann::json{{"step", step},
                                     {"allowed", allowed_total},
                                     {"expansions", expansions.size()},
                                     {"finished", finished.size()},
                                     {"kept", kept}}
                          .dump()
                   << '\n';
  };

  // Files an expansion as finished when it lands on a terminal.
  auto file = [&](Hypothesis&& h) {
    if (h.trie->terminal(h.node) != nullptr) {
      finished.push_back(std::move(h));
    } else {
      expansions.push_back(std::move(h));
    }
  };

  auto select = [&]() {
    std::sort(expansions.begin(), expansions.end(),
              [](const Hypothesis& a, const Hypothesis& b) {
                return ranks_before(a.score, a.path, b.score, b.path);
              });
    if (expansions.size() > beam) expansions.resize(beam);
    live.swap(expansions);
    expansions.clear();
  };

  // Step 0: routing decision.
  session->next_logprobs({}, logp);
  ++calls;
  if (options.timing) options.timing->first_step_seconds = seconds_since(start);
  allowed.clear();
  allowed.push_back(kCopyId);
  for (const auto& e : global_trie.children(DocidTrie::kRoot)) {
    if (e.token != kCopyId) allowed.push_back(e.token);
  }
  const double lse0 = log_sum_exp(logp, allowed);
  result.copy_confidence = std::clamp(std::exp(logp[kCopyId] - lse0), 0.0, 1.0);
  for (TokenId t : allowed) {
    Hypothesis h;
    h.path = {t};
    h.score = logp[t] - lse0;
    if (t == kCopyId) {
      h.route = Route::kCopy;
      h.trie = &context_trie;
      h.node = DocidTrie::kRoot;
    } else {
      h.route = Route::kParametric;
      h.trie = &global_trie;
      h.node = *global_trie.step(DocidTrie::kRoot, t);
    }
    file(std::move(h));
  }
  select();
  emit_trace(0, allowed.size());

  auto can_stop = [&]() {
    if (live.empty()) return true;
    if (finished.size() < beam) return false;
    std::nth_element(finished.begin(), finished.begin() + static_cast<std::ptrdiff_t>(beam - 1),
                     finished.end(), [](const Hypothesis& a, const Hypothesis& b) {
                       return ranks_before(a.score, a.path, b.score, b.path);
                     });
    const double kth = finished[beam - 1].score;
    double best_live = live.front().score;
    for (const auto& h : live) best_live = std::max(best_live, h.score);
    return kth >= best_live;
  };

  for (std::size_t step = 1; !can_stop(); ++step) {
    std::size_t allowed_total = 0;
    for (const auto& h : live) {
      session->next_logprobs(h.path, logp);
      ++calls;
      const auto edges = h.trie->children(h.node);
      allowed.clear();
      for (const auto& e : edges) allowed.push_back(e.token);
      allowed_total += allowed.size();
      const double lse = log_sum_exp(logp, allowed);
      for (const auto& e : edges) {
        Hypothesis next;
        next.path = h.path;
        next.path.push_back(e.token);
        // Masked and renormalized: never positive.
        next.score = h.score + std::min(0.0, logp[e.token] - lse);
        next.route = h.route;
        next.trie = h.trie;
        next.node = e.child;
        file(std::move(next));
      }
    }
    select();
    emit_trace(step, allowed_total);
  }

  if (finished.empty()) {
    throw Error(ErrorCode::kDecode, "beam search produced no completed docid");
  }
  std::sort(finished.begin(), finished.end(),
            [](const Hypothesis& a, const Hypothesis& b) {
              return ranks_before(a.score, a.path, b.score, b.path);
            });
  if (finished.size() > beam) finished.resize(beam);
  for (auto& h : finished) {
    DecodeEntry entry;
    entry.route = h.route;
    entry.doc_id = *h.trie->terminal(h.node);
    entry.logscore = h.score;
    entry.token_path = std::move(h.path);
    result.entries.push_back(std::move(entry));
  }
  if (options.timing) {
    options.timing->total_seconds = seconds_since(start);
    options.timing->scorer_calls = calls;
  }
  return result;
}

}  // namespace ctxgr
