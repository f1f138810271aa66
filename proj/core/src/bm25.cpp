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

#include "ctxgr/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ctxgr/similarity.hpp"

namespace ctxgr {

Bm25Collection::Bm25Collection(const Corpus& corpus, const Vocabulary& vocab)
    : corpus_(corpus), vocab_(vocab), postings_(vocab.size()) {
  lengths_.reserve(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    TokenSeq terms = vocab.encode(document_profile(corpus.doc(d)));
    lengths_.push_back(terms.size());
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if (terms[i] != kUnkId) postings_[terms[i]].emplace_back(d, j - i);
      i = j;
    }
  }
}

std::span<const std::pair<std::size_t, std::size_t>> Bm25Collection::postings(
    TokenId term) const {
  if (term >= postings_.size()) return {};
  return postings_[term];
}

Bm25Index::Bm25Index(const Bm25Collection& collection,
                     std::vector<std::size_t> docs, Bm25Params params)
    : collection_(collection), docs_(std::move(docs)), params_(params) {
  std::sort(docs_.begin(), docs_.end());
  docs_.erase(std::unique(docs_.begin(), docs_.end()), docs_.end());
  double total = 0.0;
  for (auto d : docs_) total += static_cast<double>(collection_.doc_length(d));
  avgdl_ = docs_.empty() ? 0.0 : total / static_cast<double>(docs_.size());
}

bool Bm25Index::member(std::size_t doc) const {
  return std::binary_search(docs_.begin(), docs_.end(), doc);
}

std::vector<std::size_t> Bm25Index::retrieve(std::string_view query,
                                             std::size_t k) const {
  k = std::min(k, docs_.size());
  TokenSeq terms = collection_.vocab().encode(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  const auto n = static_cast<double>(docs_.size());
  std::unordered_map<std::size_t, double> scores;
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  for (TokenId t : terms) {
    if (t == kUnkId) continue;
    hits.clear();
    for (const auto& p : collection_.postings(t)) {
      if (member(p.first)) hits.push_back(p);
    }
    if (hits.empty()) continue;
    const auto df = static_cast<double>(hits.size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (const auto& [doc, tf_count] : hits) {
      const auto tf = static_cast<double>(tf_count);
      const auto dl = static_cast<double>(collection_.doc_length(doc));
      const double norm =
          params_.k1 * (1.0 - params_.b + params_.b * dl / avgdl_);
      scores[doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(scores.size());
  for (const auto& [doc, s] : scores) ranked.emplace_back(s, doc);
  auto better = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  const std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), better);

  std::vector<std::size_t> out;
  out.reserve(k);
  // Positive scores first; zero-score docs follow in canonical order.
  for (std::size_t i = 0; i < take && ranked[i].first > 0.0; ++i) {
    out.push_back(ranked[i].second);
  }
  for (auto d : docs_) {
    if (out.size() >= k) break;
    auto it = scores.find(d);
    if (it == scores.end() || it->second <= 0.0) out.push_back(d);
  }
  return out;
}

std::vector<std::string> bm25_retrieve(const Bm25Index& index,
                                       std::string_view query, std::size_t k) {
  std::vector<std::string> ids;
  for (auto d : index.retrieve(query, k)) {
    ids.push_back(index.collection().corpus().doc(d).doc_id);
  }
  return ids;
}

}  // namespace ctxgr
