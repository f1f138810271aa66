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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctxgr/corpus.hpp"
#include "ctxgr/synthetic.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr::testing {

inline Corpus corpus_of(std::span<const std::pair<std::string, std::string>> docs) {
  std::vector<Document> out;
  for (const auto& [title, text] : docs) out.push_back({title, title, text, std::nullopt});
  return Corpus(std::move(out));
}

inline Corpus corpus_of(std::initializer_list<std::pair<std::string, std::string>> docs) {
  return corpus_of(std::span(docs.begin(), docs.size()));
}

struct World {
  Corpus corpus;
  std::vector<QueryRecord> queries;
  Vocabulary vocab;
  CorpusSplit split;
};

inline World make_world(std::size_t num_docs, std::uint64_t seed, double ratio = 0.1) {
  SyntheticConfig cfg;
  cfg.num_docs = num_docs;
  cfg.num_topics = std::max<std::size_t>(1, num_docs / 20);
  cfg.seed = seed;
  auto data = make_synthetic(cfg);
  World w{std::move(data.corpus), std::move(data.queries), {}, {}};
  w.vocab = build_vocab(w.corpus, w.queries);
  w.split = split_corpus(w.corpus, ratio, seed);
  return w;
}

}  // namespace ctxgr::testing
