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

#include <random>
#include <set>

#include "../support/fixtures.hpp"
#include "ctxgr/error.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {
namespace {

using testing::corpus_of;

TEST(Tokenizer, NormalizesCasePunctuationAndWhitespace) {
  EXPECT_EQ(normalize_words("The Battle, of Hastings"),
            (std::vector<std::string>{"the", "battle", "of", "hastings"}));
  EXPECT_TRUE(normalize_words("").empty());
  EXPECT_TRUE(normalize_words(" \t,.;!").empty());
  EXPECT_EQ(normalize("  A-b  C "), "a b c");
  EXPECT_EQ(count_words("one, two. three"), 3u);
}

TEST(Tokenizer, TruncateKeepsOriginalBytes) {
  EXPECT_EQ(truncate_words("Alpha, Beta gamma delta", 2), "Alpha, Beta");
  EXPECT_EQ(truncate_words("a b", 5), "a b");
  EXPECT_EQ(truncate_words("a b", 0), "");
}

TEST(Vocabulary, SpecialsAreReserved) {
  const Vocabulary v;
  ASSERT_EQ(v.size(), kNumSpecialTokens);
  EXPECT_EQ(kCopyId, 0u);
  EXPECT_EQ(kEosId, 1u);
  EXPECT_EQ(kUnkId, 2u);
}

TEST(Vocabulary, CoversTitlesAndSortsAfterSpecials) {
  const auto corpus = corpus_of({{"alpha beta", ""}, {"gamma", ""}});
  const auto v = build_vocab(corpus, {});
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v.token(3), "alpha");
  EXPECT_EQ(v.token(4), "beta");
  EXPECT_EQ(v.token(5), "gamma");
  EXPECT_EQ(build_vocab(corpus, {}), v);
}

TEST(Vocabulary, EncodeIsTotal) {
  const auto v = build_vocab(corpus_of({{"gamma", "delta"}}), {});
  EXPECT_EQ(v.encode("gamma zeta"), (TokenSeq{*v.find("gamma"), kUnkId}));
  EXPECT_TRUE(v.encode("").empty());
}

TEST(Vocabulary, EncodeDocidAppendsEos) {
  const auto v = build_vocab(corpus_of({{"alpha beta", ""}, {"gamma", ""}}), {});
  EXPECT_EQ(v.encode_docid("gamma"), (TokenSeq{*v.find("gamma"), kEosId}));
  EXPECT_EQ(v.encode_docid("alpha beta"),
            (TokenSeq{*v.find("alpha"), *v.find("beta"), kEosId}));
}

TEST(Vocabulary, DecodeRoundTripsNormalizedText) {
  std::mt19937_64 gen(11);
  const std::string alphabet = "abcXYZ ,.;-!\t";
  std::vector<Document> docs;
  std::vector<std::string> samples;
  for (int i = 0; i < 200; ++i) {
    std::string s;
    const int len = static_cast<int>(gen() % 30);
    for (int j = 0; j < len; ++j) s += alphabet[gen() % alphabet.size()];
    samples.push_back(s);
    const std::string id = "doc " + std::to_string(i);
    docs.push_back({id, id, s, std::nullopt});
  }
  const auto v = build_vocab(Corpus(std::move(docs)), {});
  for (const auto& s : samples) EXPECT_EQ(v.decode(v.encode(s)), normalize(s)) << s;
}

TEST(Vocabulary, JsonRoundTrip) {
  const auto v = build_vocab(corpus_of({{"alpha beta", "text here"}}), {});
  const auto j = v.to_json();
  EXPECT_EQ(j["specials"]["copy"], 0);
  EXPECT_EQ(j["specials"]["eos"], 1);
  EXPECT_EQ(j["specials"]["unk"], 2);
  EXPECT_EQ(Vocabulary::from_json(j), v);
}

TEST(Vocabulary, RejectsEmptyCorpus) {
  EXPECT_THROW(build_vocab(Corpus{}, {}), Error);
}

TEST(Vocabulary, SyntheticTitlesAreCoveredAndDistinct) {
  const auto w = testing::make_world(1000, 3);
  std::set<TokenSeq> seen;
  for (const auto& d : w.corpus.docs()) {
    const auto enc = w.vocab.encode_docid(d.doc_id);
    EXPECT_EQ(std::count(enc.begin(), enc.end(), kUnkId), 0) << d.doc_id;
    EXPECT_TRUE(seen.insert(enc).second) << d.doc_id;
  }
}

TEST(Vocabulary, EncodedDocidsArePrefixFree) {
  const auto w = testing::make_world(300, 5);
  std::vector<TokenSeq> enc;
  for (const auto& d : w.corpus.docs()) enc.push_back(w.vocab.encode_docid(d.doc_id));
  for (const auto& a : enc) {
    for (const auto& b : enc) {
      if (&a == &b || a.size() > b.size()) continue;
      EXPECT_FALSE(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
}

}  // namespace
}  // namespace ctxgr
