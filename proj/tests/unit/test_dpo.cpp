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

#include <gtest/gtest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "ctxgr/dpo.hpp"
#include "ctxgr/error.hpp"
#include "ctxgr/mock_model.hpp"
#include "ctxgr/similarity.hpp"

namespace ctxgr {
namespace {

using testing::corpus_of;

TEST(DpoLoss, EqualMarginsGiveLn2) {
  EXPECT_NEAR(dpo_loss(-3.0, -3.0, -5.0, -5.0, 0.1), std::log(2.0), 1e-15);
  EXPECT_NEAR(dpo_loss(-1.0, -2.0, -4.0, -5.0, 0.1), std::log(2.0), 1e-15);
}

TEST(DpoLoss, ZeroBetaGivesLn2) {
  EXPECT_NEAR(dpo_loss(-1.0, -9.0, -7.0, -2.0, 0.0), std::log(2.0), 1e-15);
}

TEST(DpoLoss, ReferenceValue) {
  // Margin 2 - (-1) = 3 at beta 0.1; -log sigmoid(0.3) evaluated at 40 digits.
  EXPECT_NEAR(dpo_loss(-1.0, -3.0, -6.0, -5.0, 0.1), 0.554355244468527118814588435575676571972,
              1e-9);
}

TEST(DpoLoss, StableAtExtremes) {
  EXPECT_NEAR(dpo_loss(0.0, -1e4, -1e4, 0.0, 0.1), 0.0, 1e-300);
  EXPECT_NEAR(dpo_loss(-1e4, 0.0, 0.0, -1e4, 0.1), 2000.0, 1e-9);
  EXPECT_TRUE(std::isfinite(dpo_loss(-1e6, 0.0, 0.0, -1e6, 1.0)));
}

TEST(DpoLoss, DecreasesInChosenIncreasesInRejected) {
  double prev = dpo_loss(-10.0, -5.0, -5.0, -5.0, 0.1);
  for (double pc = -9.0; pc <= 0.0; pc += 1.0) {
    const double cur = dpo_loss(pc, -5.0, -5.0, -5.0, 0.1);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  prev = dpo_loss(-5.0, -5.0, -10.0, -5.0, 0.1);
  for (double pr = -9.0; pr <= 0.0; pr += 1.0) {
    const double cur = dpo_loss(-5.0, -5.0, pr, -5.0, 0.1);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

struct MiningFixture {
  Corpus corpus = corpus_of({{"alpha", ""}, {"beta", ""}, {"gamma", ""}, {"delta", ""}});
  Vocabulary vocab = build_vocab(corpus, {});

  InContextInstance instance(const std::string& gold, InstanceMode mode) const {
    InContextInstance inst;
    inst.query = {"q", "text", gold};
    inst.mode = mode;
    inst.supervision_target = vocab.encode_docid(gold);
    if (mode == InstanceMode::kContextDependent) {
      inst.supervision_target.insert(inst.supervision_target.begin(), kCopyId);
    }
    return inst;
  }
  DecodeEntry entry(Route route, const std::string& id, double score) const {
    DecodeEntry e{route, id, score, vocab.encode_docid(id)};
    if (route == Route::kCopy) e.token_path.insert(e.token_path.begin(), kCopyId);
    return e;
  }
};

TEST(MinePairs, RankingFailure) {
  MiningFixture f;
  const auto inst = f.instance("beta", InstanceMode::kQueryIrrelevant);
  DecodeResult r;
  r.entries = {f.entry(Route::kParametric, "alpha", -0.1), f.entry(Route::kParametric, "beta", -1.0)};
  const DecodedInstance d{&inst, &r};
  const auto pairs = mine_pairs(std::span(&d, 1), 10);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].kind, PairKind::kRankingFailure);
  EXPECT_EQ(pairs[0].chosen, r.entries[1].token_path);
  EXPECT_EQ(pairs[0].rejected, r.entries[0].token_path);
}

TEST(MinePairs, RoutingFailure) {
  MiningFixture f;
  const auto inst = f.instance("gamma", InstanceMode::kContextDependent);
  DecodeResult r;
  r.entries = {f.entry(Route::kParametric, "alpha", -0.1), f.entry(Route::kCopy, "delta", -2.0)};
  const DecodedInstance d{&inst, &r};
  const auto pairs = mine_pairs(std::span(&d, 1), 10);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].kind, PairKind::kRoutingFailure);
  EXPECT_EQ(pairs[0].chosen, inst.supervision_target);
  EXPECT_EQ(pairs[0].chosen.front(), kCopyId);
  EXPECT_EQ(pairs[0].rejected, r.entries[0].token_path);
}

TEST(MinePairs, BothKindsFromOneInstance) {
  MiningFixture f;
  const auto inst = f.instance("gamma", InstanceMode::kContextDependent);
  DecodeResult r;
  r.entries = {f.entry(Route::kParametric, "alpha", -0.1), f.entry(Route::kCopy, "gamma", -2.0)};
  const DecodedInstance d{&inst, &r};
  const auto pairs = mine_pairs(std::span(&d, 1), 10);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].kind, PairKind::kRankingFailure);
  EXPECT_EQ(pairs[1].kind, PairKind::kRoutingFailure);
}

TEST(MinePairs, NothingWhenCorrectOrOutsideBeam) {
  MiningFixture f;
  const auto good = f.instance("alpha", InstanceMode::kContextDependent);
  DecodeResult r1;
  r1.entries = {f.entry(Route::kCopy, "alpha", -0.1), f.entry(Route::kParametric, "beta", -2.0)};
  const auto missing = f.instance("delta", InstanceMode::kQueryIrrelevant);
  DecodeResult r2;
  r2.entries = {f.entry(Route::kParametric, "alpha", -0.1), f.entry(Route::kParametric, "beta", -2.0)};
  const auto far = f.instance("beta", InstanceMode::kQueryIrrelevant);
  const std::vector<DecodedInstance> ds{{&good, &r1}, {&missing, &r2}, {&far, &r2}};
  // Beam width 1 puts rank 1 outside the kept list.
  EXPECT_TRUE(mine_pairs(ds, 1).empty());
  EXPECT_EQ(mine_pairs(ds, 2).size(), 1u);
}

TEST(PairMargin, PolicyEqualsReferenceGivesLn2) {
  MiningFixture f;
  const UniformScorer u(f.vocab.size());
  const PreferencePair p{"q", f.vocab.encode_docid("beta"), f.vocab.encode_docid("alpha"),
                         PairKind::kRankingFailure};
  EXPECT_NEAR(pair_margin(u, u, p, Prompt{}, 0.1), std::log(2.0), 1e-12);
}

TEST(PairMargin, MatchesSequenceNllDecomposition) {
  const auto w = testing::make_world(60, 3);
  const TfIdfSimilarity sim(w.corpus);
  const ParametricMemory memory(w.corpus, w.split);
  const MockModel policy(w.corpus, w.vocab, memory, sim, {});
  const UniformScorer ref(w.vocab.size());
  const auto& q = w.queries[0];
  const std::vector<std::string> cands{q.gold_doc_id};
  const auto inst = instance_from_candidates(w.corpus, w.vocab, q, cands, 0);
  const auto prompt = make_prompt(inst, w.vocab);
  TokenSeq chosen = w.vocab.encode_docid(q.gold_doc_id);
  chosen.insert(chosen.begin(), kCopyId);
  const TokenSeq rejected = w.vocab.encode_docid(w.split.train_ids().front());
  const PreferencePair p{q.query_id, chosen, rejected, PairKind::kRoutingFailure};
  const double margin = (-sequence_nll(policy, prompt, chosen) + sequence_nll(ref, prompt, chosen)) -
                        (-sequence_nll(policy, prompt, rejected) + sequence_nll(ref, prompt, rejected));
  const double expected = std::log1p(std::exp(-0.1 * margin));
  EXPECT_NEAR(pair_margin(policy, ref, p, prompt, 0.1), expected, 1e-12);
  // The copy path dominates under the mock, so the loss falls below ln 2.
  EXPECT_LT(pair_margin(policy, ref, p, prompt, 0.1), std::log(2.0));
}

TEST(PairJson, Fields) {
  const PreferencePair p{"q7", {0, 5}, {6}, PairKind::kRoutingFailure};
  const auto j = pair_to_json(p);
  EXPECT_EQ(j.at("qid"), "q7");
  EXPECT_EQ(j.at("kind"), std::string(to_string(PairKind::kRoutingFailure)));
  EXPECT_EQ(j.at("chosen_tokens").get<TokenSeq>(), p.chosen);
  EXPECT_EQ(j.at("rejected_tokens").get<TokenSeq>(), p.rejected);
}

}  // namespace
}  // namespace ctxgr
