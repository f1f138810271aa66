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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/string_hash.hpp"

namespace ctxgr {

class Corpus;
struct QueryRecord;

using TokenId = std::uint32_t;
using TokenSeq = std::vector<TokenId>;

// Reserved ids. Every vocabulary starts with these three entries.
inline constexpr TokenId kCopyId = 0;
inline constexpr TokenId kEosId = 1;
inline constexpr TokenId kUnkId = 2;
inline constexpr std::size_t kNumSpecialTokens = 3;

// Lowercases ASCII and splits on whitespace and ASCII punctuation; the
// punctuation itself is dropped. Bytes >= 0x80 are treated as word bytes.
std::vector<std::string> normalize_words(std::string_view s);

std::size_t count_words(std::string_view s);

// Normalized words joined by single spaces.
std::string normalize(std::string_view s);

// Longest prefix of `s` (original bytes, not normalized) that ends after the
// `max_words`-th word. Returns `s` unchanged if it has fewer words.
std::string_view truncate_words(std::string_view s, std::size_t max_words);

class Vocabulary {
 public:
  Vocabulary();

  // Reserved specials followed by the distinct words sorted bytewise.
  static Vocabulary from_words(std::vector<std::string> words);

  std::size_t size() const { return tokens_.size(); }
  std::optional<TokenId> find(std::string_view word) const;
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Total: unknown words map to kUnkId.
  TokenSeq encode(std::string_view s) const;
  std::string decode(std::span<const TokenId> ids) const;

  // encode(doc_id) followed by kEosId.
  TokenSeq encode_docid(std::string_view doc_id) const;

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  StringMap<TokenId> ids_;
};

// Covers every word of every title, text, compressed text and query.
Vocabulary build_vocab(const Corpus& corpus,
                       std::span<const QueryRecord> queries);

}  // namespace ctxgr
