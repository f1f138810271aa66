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

#include "ctxgr/synthetic.hpp"

#include <cstdio>
#include <span>
#include <string>

#include "ctxgr/error.hpp"
#include "ctxgr/random.hpp"
#include "ctxgr/string_hash.hpp"

namespace ctxgr {
namespace {

constexpr std::size_t kTopicWords = 30;
constexpr std::size_t kCommonWords = 200;
constexpr std::size_t kDocWords = 5;

class WordMint {
 public:
  explicit WordMint(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    for (;;) {
      std::string w;
      const std::size_t syllables = 2 + rng_.below(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w += kOnsets[rng_.below(kOnsets.size())];
        w += kVowels[rng_.below(kVowels.size())];
      }
      if (rng_.below(2) == 0) w += kOnsets[rng_.below(kOnsets.size())];
      if (used_.insert(w).second) return w;
    }
  }

  std::vector<std::string> batch(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(next());
    return out;
  }

 private:
  Rng rng_;
  StringSet used_;
};

std::string numbered(char prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%05zu", prefix, i);
  return buf;
}

const std::string& pick(Rng& rng, std::span<const std::string> words) {
  return words[rng.below(words.size())];
}

std::string join(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

SyntheticDataset make_synthetic(const SyntheticConfig& config) {
  if (config.num_docs == 0 || config.num_topics == 0 ||
      config.num_topics > config.num_docs) {
    throw Error(ErrorCode::kConfig,
                "synthetic: need 1 <= num_topics <= num_docs");
  }
  if (config.text_words == 0 || config.query_words < 2) {
    throw Error(ErrorCode::kConfig, "synthetic: text or query too short");
  }
  WordMint mint(mix_seed(config.seed, 1));
  Rng rng(mix_seed(config.seed, 2));

  const auto common = mint.batch(kCommonWords);
  std::vector<std::string> topic_names;
  std::vector<std::vector<std::string>> topic_vocab;
  for (std::size_t t = 0; t < config.num_topics; ++t) {
    topic_names.push_back(mint.next());
    topic_vocab.push_back(mint.batch(kTopicWords));
  }

  std::vector<Document> docs;
  std::vector<QueryRecord> queries;
  docs.reserve(config.num_docs);
  queries.reserve(config.num_docs);
  for (std::size_t d = 0; d < config.num_docs; ++d) {
    const std::size_t topic = d % config.num_topics;
    const auto own = mint.batch(kDocWords);
    const auto& tv = topic_vocab[topic];

    const std::string title = topic_names[topic] + ' ' + own[0] + ' ' + own[1];
    std::vector<std::string> text;
    text.reserve(config.text_words);
    for (std::size_t i = 0; i < config.text_words; ++i) {
      const double u = rng.uniform();
      if (u < 0.5) {
        text.push_back(pick(rng, tv));
      } else if (u < 0.7) {
        text.push_back(pick(rng, own));
      } else {
        text.push_back(pick(rng, common));
      }
    }

    std::vector<std::string> query;
    query.push_back(pick(rng, std::span(own).subspan(2)));
    query.push_back(topic_names[topic]);
    while (query.size() < config.query_words) {
      query.push_back(rng.below(3) == 0 ? pick(rng, common) : pick(rng, tv));
    }
    rng.shuffle(std::span(query));

    docs.push_back({title, title, join(text), std::nullopt});
    queries.push_back({numbered('q', d), join(query), title});
  }
  return {Corpus(std::move(docs)), std::move(queries)};
}

}  // namespace ctxgr
