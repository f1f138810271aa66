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

#include "ctxgr/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ctxgr/error.hpp"
#include "ctxgr/random.hpp"
#include "ctxgr/tokenizer.hpp"

namespace ctxgr {
namespace {

using nlohmann::json;

std::string line_error(std::size_t line, std::string_view what) {
  return "line " + std::to_string(line) + ": " + std::string(what);
}

std::string required_string(const json& obj, const char* key,
                            std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kInvalidInput,
                line_error(line, std::string("missing field \"") + key + "\""));
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidInput,
                line_error(line, std::string("field \"") + key +
                                     "\" must be a string"));
  }
  return it->get<std::string>();
}

// Calls fn(line_number, object) for each non-blank line.
template <typename Fn>
void for_each_jsonl(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput, line_error(lineno, e.what()));
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kInvalidInput,
                  line_error(lineno, "expected a JSON object"));
    }
    fn(lineno, obj);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return in;
}

void check_document(const Document& d) {
  if (d.doc_id.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty doc_id");
  }
  if (d.doc_id != d.title) {
    throw Error(ErrorCode::kInvalidInput,
                "doc_id \"" + d.doc_id + "\" differs from its title \"" +
                    d.title + "\"");
  }
  if (d.compressed_text && count_words(*d.compressed_text) > kMaxDisplayTokens) {
    throw Error(ErrorCode::kInvalidInput,
                "compressed text of \"" + d.doc_id + "\" exceeds " +
                    std::to_string(kMaxDisplayTokens) + " tokens");
  }
}

}  // namespace

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
  index_.reserve(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    check_document(docs_[i]);
    if (!index_.emplace(docs_[i].doc_id, i).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate doc_id \"" + docs_[i].doc_id + "\"");
    }
  }
}

std::optional<std::size_t> Corpus::index_of(std::string_view doc_id) const {
  auto it = index_.find(doc_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Document& Corpus::at(std::string_view doc_id) const {
  auto idx = index_of(doc_id);
  if (!idx) {
    throw Error(ErrorCode::kNotFound,
                "unknown doc_id \"" + std::string(doc_id) + "\"");
  }
  return docs_[*idx];
}

Corpus parse_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_map<std::string, std::size_t> first_line;
  for_each_jsonl(in, [&](std::size_t lineno, const json& obj) {
    Document d;
    d.doc_id = required_string(obj, "id", lineno);
    d.title = required_string(obj, "title", lineno);
    d.text = required_string(obj, "text", lineno);
    if (auto it = obj.find("compressed"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw Error(ErrorCode::kInvalidInput,
                    line_error(lineno, "field \"compressed\" must be a string"));
      }
      d.compressed_text = it->get<std::string>();
    }
    try {
      check_document(d);
    } catch (const Error& e) {
      throw Error(e.code(), line_error(lineno, e.what()));
    }
    auto [it, fresh] = first_line.emplace(d.doc_id, lineno);
    if (!fresh) {
      throw Error(ErrorCode::kInvalidInput,
                  line_error(lineno, "duplicate doc_id \"" + d.doc_id +
                                         "\" (first seen on line " +
                                         std::to_string(it->second) + ")"));
    }
    docs.push_back(std::move(d));
  });
  return Corpus(std::move(docs));
}

Corpus ingest_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& d : corpus.docs()) {
    json obj = {{"id", d.doc_id}, {"title", d.title}, {"text", d.text}};
    if (d.compressed_text) obj["compressed"] = *d.compressed_text;
    out << obj.dump() << '\n';
  }
}

std::vector<QueryRecord> parse_queries(std::istream& in, const Corpus& corpus) {
  std::vector<QueryRecord> queries;
  std::unordered_set<std::string> seen;
  for_each_jsonl(in, [&](std::size_t lineno, const json& obj) {
    if (auto it = obj.find("gold"); it != obj.end() && it->is_array()) {
      throw Error(ErrorCode::kInvalidInput,
                  line_error(lineno, "exactly one gold document per query"));
    }
    QueryRecord q;
    q.query_id = required_string(obj, "qid", lineno);
    q.text = required_string(obj, "text", lineno);
    q.gold_doc_id = required_string(obj, "gold", lineno);
    if (!seen.insert(q.query_id).second) {
      throw Error(ErrorCode::kInvalidInput,
                  line_error(lineno, "duplicate qid \"" + q.query_id + "\""));
    }
    if (!corpus.contains(q.gold_doc_id)) {
      throw Error(ErrorCode::kNotFound,
                  line_error(lineno, "query \"" + q.query_id +
                                         "\" references unknown gold \"" +
                                         q.gold_doc_id + "\""));
    }
    queries.push_back(std::move(q));
  });
  return queries;
}

std::vector<QueryRecord> load_queries(const std::filesystem::path& path,
                                      const Corpus& corpus) {
  auto in = open_input(path);
  return parse_queries(in, corpus);
}

void write_queries(std::span<const QueryRecord> queries, std::ostream& out) {
  for (const auto& q : queries) {
    out << json{{"qid", q.query_id}, {"text", q.text}, {"gold", q.gold_doc_id}}
               .dump()
        << '\n';
  }
}

CorpusSplit::CorpusSplit(std::uint64_t seed, double ratio,
                         std::vector<std::string> train_ids,
                         std::vector<std::string> new_ids)
    : seed_(seed),
      ratio_(ratio),
      train_ids_(std::move(train_ids)),
      new_ids_(std::move(new_ids)),
      new_set_(new_ids_.begin(), new_ids_.end()),
      train_set_(train_ids_.begin(), train_ids_.end()) {
  for (const auto& id : new_ids_) {
    if (train_set_.contains(id)) {
      throw Error(ErrorCode::kInvalidInput,
                  "doc \"" + id + "\" is in both train and new sets");
    }
  }
}

bool CorpusSplit::is_train(std::string_view doc_id) const {
  return train_set_.contains(doc_id);
}

bool CorpusSplit::is_new(std::string_view doc_id) const {
  return new_set_.contains(doc_id);
}

CorpusSplit split_corpus(const Corpus& corpus, double new_ratio,
                         std::uint64_t seed) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidInput, "split_corpus: empty corpus");
  }
  if (!(new_ratio > 0.0 && new_ratio < 1.0)) {
    throw Error(ErrorCode::kConfig, "split ratio must lie in (0, 1)");
  }
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span(order));
  const auto n_new = static_cast<std::size_t>(
      std::llround(new_ratio * static_cast<double>(corpus.size())));
  std::vector<bool> is_new(corpus.size(), false);
  for (std::size_t i = 0; i < n_new; ++i) is_new[order[i]] = true;

  std::vector<std::string> train, fresh;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (is_new[i] ? fresh : train).push_back(corpus.doc(i).doc_id);
  }
  return CorpusSplit(seed, new_ratio, std::move(train), std::move(fresh));
}

nlohmann::json split_to_json(const CorpusSplit& split) {
  return {{"seed", split.seed()},
          {"ratio", split.ratio()},
          {"new_ids", split.new_ids()}};
}

CorpusSplit split_from_json(const nlohmann::json& j, const Corpus& corpus) {
  try {
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto ratio = j.at("ratio").get<double>();
    std::unordered_set<std::string> fresh;
    for (const auto& id : j.at("new_ids")) {
      auto s = id.get<std::string>();
      if (!corpus.contains(s)) {
        throw Error(ErrorCode::kNotFound,
                    "split references unknown doc \"" + s + "\"");
      }
      fresh.insert(std::move(s));
    }
    std::vector<std::string> train, news;
    for (const auto& d : corpus.docs()) {
      (fresh.contains(d.doc_id) ? news : train).push_back(d.doc_id);
    }
    return CorpusSplit(seed, ratio, std::move(train), std::move(news));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("split file: ") + e.what());
  }
}

QueryBuckets split_queries(std::span<const QueryRecord> queries,
                           const CorpusSplit& split) {
  QueryBuckets buckets;
  std::vector<std::string> unresolved;
  for (const auto& q : queries) {
    if (split.is_train(q.gold_doc_id)) {
      buckets.retention.push_back(q);
    } else if (split.is_new(q.gold_doc_id)) {
      buckets.adaptation.push_back(q);
    } else {
      unresolved.push_back(q.query_id);
    }
  }
  if (!unresolved.empty()) {
    std::string msg = "unresolvable gold for queries:";
    for (const auto& id : unresolved) msg += " " + id;
    throw Error(ErrorCode::kNotFound, msg);
  }
  return buckets;
}

}  // namespace ctxgr
