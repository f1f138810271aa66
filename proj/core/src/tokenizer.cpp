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

#include "ctxgr/tokenizer.hpp"

#include <algorithm>
#include <set>

#include "ctxgr/corpus.hpp"
#include "ctxgr/error.hpp"

namespace ctxgr {
namespace {

constexpr const char* kSpecialNames[kNumSpecialTokens] = {"[COPY]", "[EOS]",
                                                          "[UNK]"};

bool is_separator(unsigned char c) {
  if (c >= 0x80) return false;
  return c <= ' ' || c == 0x7f || (c >= '!' && c <= '/') ||
         (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

// Calls fn(begin, end) for every word span in s.
template <typename Fn>
void for_each_word(std::string_view s, Fn&& fn) {
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_separator(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_separator(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start && !fn(start, i)) return;
  }
}

std::string lowered(std::string_view s) {
  std::string out(s.size(), '\0');
  std::transform(s.begin(), s.end(), out.begin(),
                 [](char c) { return lower(static_cast<unsigned char>(c)); });
  return out;
}

}  // namespace

std::vector<std::string> normalize_words(std::string_view s) {
  std::vector<std::string> words;
  for_each_word(s, [&](std::size_t b, std::size_t e) {
    words.push_back(lowered(s.substr(b, e - b)));
    return true;
  });
  return words;
}

std::size_t count_words(std::string_view s) {
  std::size_t n = 0;
  for_each_word(s, [&](std::size_t, std::size_t) {
    ++n;
    return true;
  });
  return n;
}

std::string normalize(std::string_view s) {
  std::string out;
  for_each_word(s, [&](std::size_t b, std::size_t e) {
    if (!out.empty()) out.push_back(' ');
    out += lowered(s.substr(b, e - b));
    return true;
  });
  return out;
}

std::string_view truncate_words(std::string_view s, std::size_t max_words) {
  std::size_t n = 0;
  std::size_t cut = s.size();
  for_each_word(s, [&](std::size_t, std::size_t e) {
    if (++n == max_words) {
      cut = e;
      return false;
    }
    return true;
  });
  if (max_words == 0) cut = 0;
  return s.substr(0, cut);
}

Vocabulary::Vocabulary() {
  for (TokenId id = 0; id < kNumSpecialTokens; ++id) {
    tokens_.emplace_back(kSpecialNames[id]);
    ids_.emplace(tokens_.back(), id);
  }
}

Vocabulary Vocabulary::from_words(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  Vocabulary vocab;
  vocab.tokens_.reserve(kNumSpecialTokens + words.size());
  for (auto& w : words) {
    if (w.empty() || vocab.ids_.contains(w)) continue;
    const auto id = static_cast<TokenId>(vocab.tokens_.size());
    vocab.tokens_.push_back(std::move(w));
    vocab.ids_.emplace(vocab.tokens_.back(), id);
  }
  return vocab;
}

std::optional<TokenId> Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TokenSeq Vocabulary::encode(std::string_view s) const {
  TokenSeq ids;
  std::string buf;
  for_each_word(s, [&](std::size_t b, std::size_t e) {
    buf = lowered(s.substr(b, e - b));
    auto it = ids_.find(std::string_view(buf));
    // Special names contain brackets and can never be produced by the
    // splitter, so a hit here is always an ordinary word.
    ids.push_back(it == ids_.end() ? kUnkId : it->second);
    return true;
  });
  return ids;
}

std::string Vocabulary::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (!out.empty()) out.push_back(' ');
    out += id < tokens_.size() ? tokens_[id] : std::string(kSpecialNames[kUnkId]);
  }
  return out;
}

TokenSeq Vocabulary::encode_docid(std::string_view doc_id) const {
  TokenSeq ids = encode(doc_id);
  ids.push_back(kEosId);
  return ids;
}

nlohmann::json Vocabulary::to_json() const {
  nlohmann::json j;
  j["tokens"] = std::vector<std::string>(tokens_.begin() + kNumSpecialTokens,
                                         tokens_.end());
  j["specials"] = {{"copy", kCopyId}, {"eos", kEosId}, {"unk", kUnkId}};
  return j;
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
  try {
    const auto& sp = j.at("specials");
    if (sp.at("copy").get<TokenId>() != kCopyId ||
        sp.at("eos").get<TokenId>() != kEosId ||
        sp.at("unk").get<TokenId>() != kUnkId) {
      throw Error(ErrorCode::kInvalidInput, "vocabulary: unexpected special ids");
    }
    auto words = j.at("tokens").get<std::vector<std::string>>();
    if (!std::is_sorted(words.begin(), words.end()) ||
        std::adjacent_find(words.begin(), words.end()) != words.end()) {
      throw Error(ErrorCode::kInvalidInput,
                  "vocabulary: tokens must be sorted and distinct");
    }
    return from_words(std::move(words));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("vocabulary: ") + e.what());
  }
}

Vocabulary build_vocab(const Corpus& corpus,
                       std::span<const QueryRecord> queries) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidInput, "build_vocab: empty corpus");
  }
  std::set<std::string> words;
  auto add = [&](std::string_view s) {
    for (auto& w : normalize_words(s)) words.insert(std::move(w));
  };
  for (const auto& doc : corpus.docs()) {
    add(doc.title);
    add(doc.text);
    if (doc.compressed_text) add(*doc.compressed_text);
  }
  for (const auto& q : queries) add(q.text);
  return Vocabulary::from_words({words.begin(), words.end()});
}

}  // namespace ctxgr
