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

#include "ctxgr/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ctxgr/error.hpp"
#include "ctxgr/random.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {
namespace {

constexpr std::uint64_t kUnknownTermBit = 1ULL << 63;

}  // namespace

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      sum += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return sum;
}

TfIdfModel::TfIdfModel(const Corpus& corpus) : num_docs_(corpus.size()) {
  std::vector<std::size_t> df;
  for (const auto& doc : corpus.docs()) {
    auto words = normalize_words(document_profile(doc));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (auto& w : words) {
      auto [it, fresh] =
          term_ids_.emplace(std::move(w), static_cast<std::uint32_t>(df.size()));
      if (fresh) df.push_back(0);
      ++df[it->second];
    }
  }
  idf_.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    idf_[t] = std::log((1.0 + static_cast<double>(num_docs_)) /
                       (1.0 + static_cast<double>(df[t]))) +
              1.0;
  }
}

double TfIdfModel::idf(std::string_view word) const {
  auto it = term_ids_.find(word);
  if (it != term_ids_.end()) return idf_[it->second];
  return std::log(1.0 + static_cast<double>(num_docs_)) + 1.0;
}

SparseVector TfIdfModel::vectorize(std::string_view text) const {
  std::map<std::uint64_t, double> weights;
  for (const auto& w : normalize_words(text)) {
    auto it = term_ids_.find(w);
    if (it != term_ids_.end()) {
      weights[it->second] += idf_[it->second];
    } else {
      weights[kUnknownTermBit | (stable_hash(w) >> 1)] += idf(w);
    }
  }
  double norm = 0.0;
  for (const auto& [_, v] : weights) norm += v * v;
  SparseVector out;
  if (norm <= 0.0) return out;
  norm = std::sqrt(norm);
  out.entries.reserve(weights.size());
  for (const auto& [k, v] : weights) out.entries.emplace_back(k, v / norm);
  return out;
}

std::string document_profile(const Document& doc) {
  return doc.title + "\n" + doc.text;
}

double lexical_similarity(const TfIdfModel& model, std::string_view a,
                          std::string_view b) {
  const double s = dot(model.vectorize(a), model.vectorize(b));
  return std::clamp(s, 0.0, 1.0);
}

void SimilarityBackend::query_docs(const QueryRecord& query,
                                   std::span<const std::size_t> docs,
                                   std::span<double> out) const {
  for (std::size_t i = 0; i < docs.size(); ++i) out[i] = query_doc(query, docs[i]);
}

TfIdfSimilarity::TfIdfSimilarity(const Corpus& corpus) : model_(corpus) {
  doc_vecs_.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) {
    doc_vecs_.push_back(model_.vectorize(document_profile(doc)));
  }
}

double TfIdfSimilarity::doc_doc(std::size_t a, std::size_t b) const {
  return std::clamp(dot(doc_vecs_.at(a), doc_vecs_.at(b)), 0.0, 1.0);
}

double TfIdfSimilarity::query_doc(const QueryRecord& query,
                                  std::size_t doc) const {
  return std::clamp(dot(model_.vectorize(query.text), doc_vecs_.at(doc)), 0.0,
                    1.0);
}

void TfIdfSimilarity::query_docs(const QueryRecord& query,
                                 std::span<const std::size_t> docs,
                                 std::span<double> out) const {
  const SparseVector q = model_.vectorize(query.text);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out[i] = std::clamp(dot(q, doc_vecs_.at(docs[i])), 0.0, 1.0);
  }
}

OracleSimilarity::OracleSimilarity(const Corpus& corpus,
                                   std::span<const QueryRecord> queries,
                                   const SimilarityBackend& base)
    : base_(base) {
  for (const auto& q : queries) {
    gold_.emplace(q.query_id, corpus.index_of(q.gold_doc_id).value());
  }
}

double OracleSimilarity::doc_doc(std::size_t a, std::size_t b) const {
  return base_.doc_doc(a, b);
}

double OracleSimilarity::query_doc(const QueryRecord& query,
                                   std::size_t doc) const {
  auto it = gold_.find(query.query_id);
  return (it != gold_.end() && it->second == doc) ? 1.0 : 0.0;
}

}  // namespace ctxgr
