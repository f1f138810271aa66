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

#include <numeric>
#include <set>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "ctxgr/error.hpp"
#include "ctxgr/prompt.hpp"
#include "ctxgr/similarity.hpp"

namespace ctxgr {
namespace {

using testing::corpus_of;

std::vector<std::size_t> all_indices(const Corpus& c) {
  std::vector<std::size_t> v(c.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::string> non_gold(const testing::World& w, const QueryRecord& q,
                                  std::size_t n) {
  std::vector<std::string> out;
  for (const auto& d : w.corpus.docs()) {
    if (d.doc_id != q.gold_doc_id && out.size() < n) out.push_back(d.doc_id);
  }
  return out;
}

TEST(HardNegatives, HundredDeepOnThousandDocs) {
  const auto w = testing::make_world(1000, 4);
  const TfIdfSimilarity sim(w.corpus);
  const auto pool = all_indices(w.corpus);
  const auto& anchor = w.corpus.doc(17).doc_id;
  const auto neg = mine_hard_negatives(w.corpus, sim, pool, anchor, 100);
  ASSERT_EQ(neg.size(), 100u);
  EXPECT_EQ(std::set<std::string>(neg.begin(), neg.end()).size(), 100u);
  EXPECT_EQ(std::count(neg.begin(), neg.end(), anchor), 0);
}

TEST(HardNegatives, ExactDuplicateRanksFirst) {
  // Profiles include the title, so the duplicate reuses the anchor's title words.
  const auto corpus = corpus_of({{"a one", "x y z"}, {"b", "p q r"}, {"c", "x y w"}, {"one a", "x y z"}});
  const TfIdfSimilarity sim(corpus);
  const auto neg = mine_hard_negatives(corpus, sim, all_indices(corpus), "a one", 3);
  EXPECT_EQ(neg.front(), "one a");
  EXPECT_NEAR(sim.doc_doc(0, 3), 1.0, 1e-12);
}

TEST(HardNegatives, MatchesFullSortOracle) {
  const auto w = testing::make_world(50, 13);
  std::vector<std::string> profiles;
  for (const auto& d : w.corpus.docs()) profiles.push_back(document_profile(d));
  const oracle::TfIdf ref(profiles);
  const TfIdfSimilarity sim(w.corpus);
  const auto pool = all_indices(w.corpus);
  for (std::size_t a = 0; a < w.corpus.size(); ++a) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t d = 0; d < w.corpus.size(); ++d) {
      if (d != a) all.push_back({-ref.cosine(profiles[a], profiles[d]), d});
    }
    std::sort(all.begin(), all.end());
    const auto got = mine_hard_negatives(w.corpus, sim, pool, w.corpus.doc(a).doc_id, 5);
    for (std::size_t i = 0; i < 5; ++i) {
      // Scores must agree; ids must agree unless two scores tie to rounding.
      EXPECT_NEAR(-all[i].first, sim.doc_doc(a, *w.corpus.index_of(got[i])), 1e-12);
      if (i + 1 < all.size() && std::abs(all[i].first - all[i + 1].first) > 1e-12 &&
          (i == 0 || std::abs(all[i].first - all[i - 1].first) > 1e-12)) {
        EXPECT_EQ(got[i], w.corpus.doc(all[i].second).doc_id);
      }
    }
  }
}

TEST(HardNegatives, RejectsOversizedK) {
  const auto w = testing::make_world(20, 1);
  const TfIdfSimilarity sim(w.corpus);
  const auto pool = all_indices(w.corpus);
  EXPECT_THROW(mine_hard_negatives(w.corpus, sim, pool, w.corpus.doc(0).doc_id, 20), Error);
  EXPECT_NO_THROW(mine_hard_negatives(w.corpus, sim, pool, w.corpus.doc(0).doc_id, 19));
  EXPECT_THROW(mine_hard_negatives(w.corpus, sim, pool, w.corpus.doc(0).doc_id, 0), Error);
}

TEST(Sampling, WithoutReplacementAndNested) {
  std::vector<std::string> pool;
  for (int i = 0; i < 50; ++i) pool.push_back("d" + std::to_string(i));
  const auto small = sample_without_replacement(pool, 5, 42);
  const auto big = sample_without_replacement(pool, 30, 42);
  EXPECT_EQ(std::set<std::string>(big.begin(), big.end()).size(), 30u);
  EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
  EXPECT_THROW(sample_without_replacement(pool, 51, 42), Error);
}

TEST(ContextDependent, GoldPositionIsUniform) {
  const auto w = testing::make_world(40, 2);
  const auto& q = w.queries[0];
  const auto neg = non_gold(w, q, 2);
  std::vector<std::size_t> counts(3, 0);
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const auto inst = build_context_dependent(w.corpus, w.vocab, q, neg, 3, seed);
    ++counts[*inst.gold_position];
  }
  EXPECT_LT(oracle::chi_square_uniform(counts), oracle::chi_square_critical_001(2));
}

TEST(ContextDependent, SingleSlotIsGold) {
  const auto w = testing::make_world(40, 2);
  const auto& q = w.queries[1];
  const auto inst = build_context_dependent(w.corpus, w.vocab, q, {}, 1, 9);
  ASSERT_EQ(inst.candidates.size(), 1u);
  EXPECT_EQ(inst.candidates[0].doc_id, q.gold_doc_id);
  EXPECT_EQ(inst.gold_position, 0u);
}

TEST(ContextDependent, InvariantsHold) {
  const auto w = testing::make_world(60, 5);
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& q = w.queries[i];
    const auto neg = non_gold(w, q, 9);
    const auto inst = build_context_dependent(w.corpus, w.vocab, q, neg, 10, i);
    EXPECT_EQ(inst.mode, InstanceMode::kContextDependent);
    ASSERT_TRUE(inst.gold_position);
    EXPECT_EQ(inst.candidates[*inst.gold_position].doc_id, q.gold_doc_id);
    EXPECT_EQ(inst.supervision_target.front(), kCopyId);
    TokenSeq expected{kCopyId};
    const auto enc = w.vocab.encode_docid(q.gold_doc_id);
    expected.insert(expected.end(), enc.begin(), enc.end());
    EXPECT_EQ(inst.supervision_target, expected);
    // Other slots hold the first n-1 negatives in order.
    std::vector<std::string> others;
    for (const auto& c : inst.candidates) {
      if (c.doc_id != q.gold_doc_id) others.push_back(c.doc_id);
    }
    EXPECT_EQ(others, neg);
  }
}

TEST(ContextDependent, RejectsBadNegatives) {
  const auto w = testing::make_world(40, 2);
  const auto& q = w.queries[0];
  EXPECT_THROW(build_context_dependent(w.corpus, w.vocab, q, non_gold(w, q, 1), 3, 0), Error);
  std::vector<std::string> with_gold{q.gold_doc_id, non_gold(w, q, 1)[0]};
  EXPECT_THROW(build_context_dependent(w.corpus, w.vocab, q, with_gold, 3, 0), Error);
}

TEST(QueryIrrelevant, NoGoldAndBareTarget) {
  const auto w = testing::make_world(200, 6);
  std::size_t with_gold = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& q = w.queries[i];
    const auto inst = build_query_irrelevant(w.corpus, w.vocab, q, non_gold(w, q, 5), 3);
    EXPECT_EQ(inst.candidates.size(), 3u);
    EXPECT_FALSE(inst.gold_position);
    EXPECT_EQ(inst.mode, InstanceMode::kQueryIrrelevant);
    EXPECT_NE(inst.supervision_target.front(), kCopyId);
    EXPECT_EQ(inst.supervision_target, w.vocab.encode_docid(q.gold_doc_id));
    for (const auto& c : inst.candidates) with_gold += c.doc_id == q.gold_doc_id;
  }
  EXPECT_EQ(with_gold, 0u);
}

TEST(QueryIrrelevant, RejectsGoldAmongNegatives) {
  const auto w = testing::make_world(40, 2);
  const auto& q = w.queries[0];
  auto neg = non_gold(w, q, 3);
  neg[1] = q.gold_doc_id;
  EXPECT_THROW(build_query_irrelevant(w.corpus, w.vocab, q, neg, 3), Error);
  EXPECT_THROW(build_query_irrelevant(w.corpus, w.vocab, q, non_gold(w, q, 2), 3), Error);
}

TEST(Template, TwoCandidateFixture) {
  const auto corpus = corpus_of({{"Alpha Beta", "first body"}, {"Gamma", "second body"}});
  const QueryRecord q{"q1", "which one?", "Gamma"};
  const auto vocab = build_vocab(corpus, std::vector<QueryRecord>{q});
  const auto inst = instance_from_candidates(corpus, vocab, q,
                                             std::vector<std::string>{"Alpha Beta", "Gamma"}, 0);
  const std::string expected =
      "Given a query and a list of candidate documents, retrieve the title of the most "
      "relevant document. If the relevant document appears in the candidate list, output "
      "[COPY] followed by its title. Otherwise, output the title from memory directly."
      "\n\nCandidates:\n"
      "[1] first body\nTitle: Alpha Beta\n"
      "[2] second body\nTitle: Gamma\n"
      "Query: which one?\nOutput:";
  EXPECT_EQ(render_template(inst), expected);
}

TEST(Template, CompressedTextWins) {
  std::vector<Document> docs{{"A", "A", "full long original body", "short summary"}};
  const Corpus corpus(std::move(docs));
  EXPECT_EQ(display_text(corpus.doc(0)), "short summary");
  const QueryRecord q{"q", "x", "A"};
  const auto vocab = build_vocab(corpus, std::vector<QueryRecord>{q});
  const auto r = render_template(
      instance_from_candidates(corpus, vocab, q, std::vector<std::string>{"A"}, 0));
  EXPECT_NE(r.find("short summary"), std::string::npos);
  EXPECT_EQ(r.find("full long original body"), std::string::npos);
}

TEST(Template, TruncatesUncompressedText) {
  std::string body;
  for (int i = 0; i < 300; ++i) body += "w" + std::to_string(i) + " ";
  const Corpus corpus(std::vector<Document>{{"A", "A", body, std::nullopt}});
  const auto shown = display_text(corpus.doc(0));
  EXPECT_EQ(count_words(shown), kMaxDisplayTokens);
  EXPECT_EQ(normalize_words(shown).back(), "w255");
}

TEST(Template, BudgetFormulaOnHundredCandidates) {
  const auto w = testing::make_world(300, 7);
  const auto& q = w.queries[0];
  const auto inst = build_context_dependent(w.corpus, w.vocab, q, non_gold(w, q, 99), 100, 3);
  ASSERT_EQ(inst.candidates.size(), 100u);
  const auto tokens = w.vocab.encode(render_template(inst)).size();
  std::size_t formula = count_words(kSystemInstruction) + 3 + count_words(q.text);
  for (const auto& c : inst.candidates) {
    formula += 2 + count_words(c.display_text) + count_words(c.doc_id);
  }
  EXPECT_EQ(tokens, formula);
  EXPECT_EQ(template_token_budget(inst), formula);
  EXPECT_EQ(make_prompt(inst, w.vocab).tokens.size(), formula);
}

TEST(Template, RenderingIsInjective) {
  const auto w = testing::make_world(60, 7);
  const auto& q = w.queries[0];
  const auto neg = non_gold(w, q, 4);
  const auto a = build_query_irrelevant(w.corpus, w.vocab, q, neg, 4);
  auto reordered = neg;
  std::swap(reordered[0], reordered[1]);
  const auto b = build_query_irrelevant(w.corpus, w.vocab, q, reordered, 4);
  auto other = neg;
  other[3] = non_gold(w, q, 5)[4];
  const auto c = build_query_irrelevant(w.corpus, w.vocab, q, other, 4);
  QueryRecord q2 = q;
  q2.text += " extra";
  const auto d = build_query_irrelevant(w.corpus, w.vocab, q2, neg, 4);
  const std::set<std::string> rendered{render_template(a), render_template(b),
                                       render_template(c), render_template(d)};
  EXPECT_EQ(rendered.size(), 4u);
}

TEST(TitleOnly, HundredTitlesNoBodies) {
  const auto w = testing::make_world(300, 8);
  const auto& q = w.queries[0];
  const auto ids = non_gold(w, q, 100);
  const auto inst = build_title_only_context(w.vocab, q, ids, 100, false, 0);
  ASSERT_EQ(inst.candidates.size(), 100u);
  for (const auto& c : inst.candidates) EXPECT_TRUE(c.display_text.empty());
  const auto r = render_template(inst);
  for (const auto& id : ids) EXPECT_NE(r.find("Title: " + id + "\n"), std::string::npos);
  EXPECT_EQ(r.find(w.corpus.at(ids[0]).text), std::string::npos);
  EXPECT_EQ(inst.mode, InstanceMode::kQueryIrrelevant);
}

TEST(TitleOnly, SingletonGold) {
  const auto w = testing::make_world(40, 8);
  const auto& q = w.queries[2];
  const auto inst = build_title_only_context(w.vocab, q, {}, 1, true, 4);
  ASSERT_EQ(inst.candidates.size(), 1u);
  EXPECT_EQ(inst.candidates[0].doc_id, q.gold_doc_id);
  EXPECT_EQ(inst.supervision_target.front(), kCopyId);
}

TEST(TitleOnly, TokenCountWithinBudget) {
  const auto w = testing::make_world(300, 9);
  const auto& q = w.queries[3];
  for (std::size_t k : {1u, 10u, 50u, 100u}) {
    const auto inst = build_title_only_context(w.vocab, q, non_gold(w, q, k), k, true, k);
    std::size_t titles = 0;
    for (const auto& c : inst.candidates) titles += w.vocab.encode(c.doc_id).size();
    const std::size_t body = w.vocab.encode(render_template(inst)).size() -
                             count_words(kSystemInstruction) - 3 - count_words(q.text);
    EXPECT_LE(body, titles + kPerItemOverheadTokens * k);
  }
}

TEST(Instances, JsonRoundTrip) {
  const auto w = testing::make_world(60, 10);
  StringMap<QueryRecord> by_id;
  for (const auto& q : w.queries) by_id.emplace(q.query_id, q);
  const auto& q = w.queries[4];
  const auto a = build_context_dependent(w.corpus, w.vocab, q, non_gold(w, q, 4), 5, 77);
  const auto b = build_query_irrelevant(w.corpus, w.vocab, q, non_gold(w, q, 4), 4);
  for (const auto* inst : {&a, &b}) {
    const auto j = instance_to_json(*inst);
    EXPECT_EQ(j.contains("gold_position"), inst->gold_in_context());
    const auto back = instance_from_json(j, w.corpus, w.vocab, by_id);
    EXPECT_EQ(back.candidates, inst->candidates);
    EXPECT_EQ(back.gold_position, inst->gold_position);
    EXPECT_EQ(back.mode, inst->mode);
    EXPECT_EQ(back.supervision_target, inst->supervision_target);
  }
  auto bad = instance_to_json(a);
  bad["mode"] = "query_irrelevant";
  EXPECT_THROW(instance_from_json(bad, w.corpus, w.vocab, by_id), Error);
}

TEST(Instances, DichotomyOverMixedBatch) {
  const auto w = testing::make_world(200, 12);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto& q = w.queries[i];
    const auto neg = non_gold(w, q, 6);
    const auto inst = i % 2 ? build_context_dependent(w.corpus, w.vocab, q, neg, 6, i)
                            : build_query_irrelevant(w.corpus, w.vocab, q, neg, 6);
    const bool copy = inst.supervision_target.front() == kCopyId;
    violations += copy != (inst.mode == InstanceMode::kContextDependent);
  }
  EXPECT_EQ(violations, 0u);
}

}  // namespace
}  // namespace ctxgr
