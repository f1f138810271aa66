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
#include <utility>
#include <vector>

#include "ctxgr/corpus.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Tokenized corpus with global postings; shared by every per-query index.
class Bm25Collection {
 public:
  Bm25Collection(const Corpus& corpus, const Vocabulary& vocab);

  const Corpus& corpus() const { return corpus_; }
  const Vocabulary& vocab() const { return vocab_; }
  std::size_t doc_length(std::size_t doc) const { return lengths_[doc]; }
  // (doc, term frequency) pairs for `term`, ascending by doc.
  std::span<const std::pair<std::size_t, std::size_t>> postings(TokenId term) const;

 private:
  const Corpus& corpus_;
  const Vocabulary& vocab_;
  std::vector<std::size_t> lengths_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> postings_;
};

// Okapi BM25 restricted to a search space of documents.
//   idf(t)  = ln(1 + (N - df + 0.5) / (df + 0.5))
//   score   = sum over distinct query terms of
//             idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl))
// N, df and avgdl are computed over the search space only.
class Bm25Index {
 public:
  Bm25Index(const Bm25Collection& collection, std::vector<std::size_t> docs,
            Bm25Params params = {});

  const Bm25Collection& collection() const { return collection_; }
  std::size_t size() const { return docs_.size(); }
  // Canonical corpus indices, ascending.
  const std::vector<std::size_t>& docs() const { return docs_; }

  // Top-k canonical indices by score, ties by canonical order. Returns
  // min(k, size()) documents; zero-score documents fill the tail.
  std::vector<std::size_t> retrieve(std::string_view query, std::size_t k) const;

 private:
  bool member(std::size_t doc) const;

  const Bm25Collection& collection_;
  std::vector<std::size_t> docs_;
  Bm25Params params_;
  double avgdl_ = 0.0;
};

// Docids of Bm25Index::retrieve.
std::vector<std::string> bm25_retrieve(const Bm25Index& index,
                                       std::string_view query, std::size_t k);

}  // namespace ctxgr
