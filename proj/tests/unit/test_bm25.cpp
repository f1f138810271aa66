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

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "ctxgr/bm25.hpp"
#include "ctxgr/similarity.hpp"

namespace ctxgr {
namespace {

using testing::corpus_of;

std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(Bm25, SingleDocument) {
  const auto corpus = corpus_of({{"only", "some words here"}});
  const auto vocab = build_vocab(corpus, {});
  const Bm25Collection c(corpus, vocab);
  const Bm25Index idx(c, {0});
  EXPECT_EQ(bm25_retrieve(idx, "words", 5), std::vector<std::string>{"only"});
  EXPECT_EQ(bm25_retrieve(idx, "absent", 5), std::vector<std::string>{"only"});
}

TEST(Bm25, UniqueTermFindsItsDocument) {
  std::vector<std::pair<std::string, std::string>> docs;
  for (int i = 0; i < 30; ++i) {
    docs.push_back({"d" + std::to_string(i), "shared filler u" + std::to_string(i)});
  }
  const auto corpus = corpus_of(docs);
  const auto vocab = build_vocab(corpus, {});
  const Bm25Collection c(corpus, vocab);
  const Bm25Index idx(c, iota_n(corpus.size()));
  for (int i = 0; i < 30; ++i) {
    EXPECT_EQ(bm25_retrieve(idx, "u" + std::to_string(i), 1).front(), "d" + std::to_string(i));
  }
}

TEST(Bm25, MatchesOracleRanking) {
  const auto w = testing::make_world(200, 4);
  const Bm25Collection c(w.corpus, w.vocab);
  const Bm25Index idx(c, iota_n(w.corpus.size()));
  std::vector<std::string> profiles;
  for (const auto& d : w.corpus.docs()) profiles.push_back(document_profile(d));
  for (std::size_t qi = 0; qi < 50; ++qi) {
    const auto& q = w.queries[qi];
    const auto scores = oracle::bm25_scores(profiles, q.text);
    std::vector<std::size_t> order = iota_n(scores.size());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    const auto got = idx.retrieve(q.text, 20);
    ASSERT_EQ(got.size(), 20u);
    for (std::size_t r = 0; r < got.size(); ++r) {
      // Compare scores so near-ties in floating point do not flip the check.
      EXPECT_NEAR(scores[got[r]], scores[order[r]], 1e-9) << "query " << qi << " rank " << r;
    }
  }
}

TEST(Bm25, SubsetIndexUsesOwnStatistics) {
  const auto w = testing::make_world(100, 8);
  const Bm25Collection c(w.corpus, w.vocab);
  std::vector<std::size_t> subset;
  std::vector<std::string> profiles;
  for (std::size_t d = 0; d < w.corpus.size(); d += 3) {
    subset.push_back(d);
    profiles.push_back(document_profile(w.corpus.doc(d)));
  }
  const Bm25Index idx(c, subset);
  for (std::size_t qi = 0; qi < 10; ++qi) {
    const auto& text = w.queries[qi].text;
    const auto scores = oracle::bm25_scores(profiles, text);
    const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
    const auto got = idx.retrieve(text, 1);
    const auto pos = std::lower_bound(subset.begin(), subset.end(), got[0]) - subset.begin();
    EXPECT_NEAR(scores[pos], scores[best], 1e-9);
  }
}

TEST(Bm25, TruncatesToK) {
  const auto w = testing::make_world(50, 2);
  const Bm25Collection c(w.corpus, w.vocab);
  const Bm25Index idx(c, iota_n(w.corpus.size()));
  EXPECT_EQ(idx.retrieve(w.queries[0].text, 7).size(), 7u);
  EXPECT_EQ(idx.retrieve(w.queries[0].text, 500).size(), 50u);
  EXPECT_TRUE(idx.retrieve(w.queries[0].text, 0).empty());
  const auto all = idx.retrieve("zzzz", 50);
  EXPECT_EQ(all, iota_n(50));
}

}  // namespace
}  // namespace ctxgr
