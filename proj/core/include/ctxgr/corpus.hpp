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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/string_hash.hpp"

namespace ctxgr {

// Upper bound on compressed_text length, in tokens. Also the truncation
// budget used when a document has no compressed form.
inline constexpr std::size_t kMaxDisplayTokens = 256;

// A corpus document. The title doubles as the docid.
struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
  std::optional<std::string> compressed_text;

  friend bool operator==(const Document&, const Document&) = default;
};

struct QueryRecord {
  std::string query_id;
  std::string text;
  std::string gold_doc_id;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

// Immutable, validated document collection. Insertion order is the canonical
// order used for every tie-break downstream.
class Corpus {
 public:
  Corpus() = default;
  // Throws Error(kInvalidInput) when an invariant of Document is violated.
  explicit Corpus(std::vector<Document> docs);

  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const std::vector<Document>& docs() const { return docs_; }
  const Document& doc(std::size_t index) const { return docs_.at(index); }

  std::optional<std::size_t> index_of(std::string_view doc_id) const;
  bool contains(std::string_view doc_id) const {
    return index_of(doc_id).has_value();
  }
  // Throws Error(kNotFound).
  const Document& at(std::string_view doc_id) const;

 private:
  std::vector<Document> docs_;
  StringMap<std::size_t> index_;
};

// JSONL, one {"id","title","text","compressed"?} object per line.
Corpus parse_corpus(std::istream& in);
Corpus ingest_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, std::ostream& out);

// JSONL, one {"qid","text","gold"} object per line. Every gold must resolve
// in `corpus`.
std::vector<QueryRecord> parse_queries(std::istream& in, const Corpus& corpus);
std::vector<QueryRecord> load_queries(const std::filesystem::path& path,
                                      const Corpus& corpus);
void write_queries(std::span<const QueryRecord> queries, std::ostream& out);

// Partition of the corpus into the initially indexed part and the documents
// that arrive later. Both id lists are kept in canonical corpus order.
class CorpusSplit {
 public:
  CorpusSplit() = default;
  CorpusSplit(std::uint64_t seed, double ratio,
              std::vector<std::string> train_ids,
              std::vector<std::string> new_ids);

  std::uint64_t seed() const { return seed_; }
  double ratio() const { return ratio_; }
  const std::vector<std::string>& train_ids() const { return train_ids_; }
  const std::vector<std::string>& new_ids() const { return new_ids_; }

  bool is_train(std::string_view doc_id) const;
  bool is_new(std::string_view doc_id) const;

  friend bool operator==(const CorpusSplit& a, const CorpusSplit& b) {
    return a.seed_ == b.seed_ && a.ratio_ == b.ratio_ &&
           a.train_ids_ == b.train_ids_ && a.new_ids_ == b.new_ids_;
  }

 private:
  std::uint64_t seed_ = 0;
  double ratio_ = 0.0;
  std::vector<std::string> train_ids_;
  std::vector<std::string> new_ids_;
  StringSet new_set_;
  StringSet train_set_;
};

// Seeded uniform shuffle, then the first round(ratio * size) documents become
// the new set.
CorpusSplit split_corpus(const Corpus& corpus, double new_ratio,
                         std::uint64_t seed);

nlohmann::json split_to_json(const CorpusSplit& split);
// train_ids are rebuilt as the complement of new_ids within `corpus`.
CorpusSplit split_from_json(const nlohmann::json& j, const Corpus& corpus);

struct QueryBuckets {
  std::vector<QueryRecord> retention;   // gold in train_ids
  std::vector<QueryRecord> adaptation;  // gold in new_ids
};

QueryBuckets split_queries(std::span<const QueryRecord> queries,
                           const CorpusSplit& split);

}  // namespace ctxgr
