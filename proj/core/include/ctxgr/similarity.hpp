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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxgr/corpus.hpp"
#include "ctxgr/string_hash.hpp"

namespace ctxgr {

// Sparse, L2-normalized term-weight vector sorted by key.
struct SparseVector {
  std::vector<std::pair<std::uint64_t, double>> entries;

  bool empty() const { return entries.empty(); }
};

double dot(const SparseVector& a, const SparseVector& b);

// Smoothed tf-idf over the normalized words of a reference corpus:
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1,   weight = count * idf.
// Words absent from the reference corpus get df = 0 and a hashed key that
// cannot clash with a corpus term id.
class TfIdfModel {
 public:
  explicit TfIdfModel(const Corpus& corpus);

  SparseVector vectorize(std::string_view text) const;
  double idf(std::string_view word) const;
  std::size_t num_documents() const { return num_docs_; }

 private:
  std::size_t num_docs_ = 0;
  StringMap<std::uint32_t> term_ids_;
  std::vector<double> idf_;
};

// Text used to represent a document in similarity computations.
std::string document_profile(const Document& doc);

// Cosine of tf-idf vectors under `model`, in [0, 1]; 0 for empty strings.
double lexical_similarity(const TfIdfModel& model, std::string_view a,
                          std::string_view b);

// Pluggable similarity used for hard-negative mining and by the mock model.
// Document arguments are canonical corpus indices.
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;

  virtual double doc_doc(std::size_t a, std::size_t b) const = 0;
  virtual double query_doc(const QueryRecord& query, std::size_t doc) const = 0;

  // Batch form; the default loops over query_doc.
  virtual void query_docs(const QueryRecord& query,
                          std::span<const std::size_t> docs,
                          std::span<double> out) const;
};

class TfIdfSimilarity final : public SimilarityBackend {
 public:
  explicit TfIdfSimilarity(const Corpus& corpus);

  double doc_doc(std::size_t a, std::size_t b) const override;
  double query_doc(const QueryRecord& query, std::size_t doc) const override;
  void query_docs(const QueryRecord& query, std::span<const std::size_t> docs,
                  std::span<double> out) const override;

  const TfIdfModel& model() const { return model_; }
  const SparseVector& doc_vector(std::size_t doc) const { return doc_vecs_[doc]; }

 private:
  TfIdfModel model_;
  std::vector<SparseVector> doc_vecs_;
};

// Analytic limit: a query scores 1 against its gold document and 0 against
// everything else. Document-document similarity is delegated to `base`.
class OracleSimilarity final : public SimilarityBackend {
 public:
  OracleSimilarity(const Corpus& corpus, std::span<const QueryRecord> queries,
                   const SimilarityBackend& base);

  double doc_doc(std::size_t a, std::size_t b) const override;
  double query_doc(const QueryRecord& query, std::size_t doc) const override;

 private:
  StringMap<std::size_t> gold_;
  const SimilarityBackend& base_;
};

}  // namespace ctxgr
