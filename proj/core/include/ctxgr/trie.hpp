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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxgr/tokenizer.hpp"

namespace ctxgr {

// Prefix automaton over encoded docids. Every path ends in an eos edge whose
// target is a childless terminal naming exactly one docid. Children are kept
// sorted by token id, so iteration order and structure are canonical.
class DocidTrie {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kRoot = 0;

  struct Edge {
    TokenId token;
    NodeId child;
  };

  DocidTrie();

  std::size_t size() const { return doc_ids_.size(); }
  bool empty() const { return doc_ids_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }

  // Docids in insertion order.
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }

  std::span<const Edge> children(NodeId node) const {
    return nodes_[node].edges;
  }
  std::optional<NodeId> step(NodeId node, TokenId token) const;
  // Follows `path` from the root; nullopt if it leaves the trie.
  std::optional<NodeId> walk(std::span<const TokenId> path) const;
  // Docid at a terminal node, nullptr for interior nodes.
  const std::string* terminal(NodeId node) const;

  // { t : some inserted encoding extends `prefix` with t }, ascending.
  std::vector<TokenId> allowed_tokens(std::span<const TokenId> prefix) const;

  bool contains(std::span<const TokenId> encoded) const;

  // Every complete encoded path in canonical (lexicographic) order.
  std::vector<TokenSeq> paths() const;

  // Binary snapshot; see docs/trie_snapshot.md.
  void save(std::ostream& out) const;
  static DocidTrie load(std::istream& in);

  friend bool operator==(const DocidTrie& a, const DocidTrie& b);

 private:
  friend class TrieBuilder;

  struct Node {
    std::vector<Edge> edges;
    std::int32_t terminal = -1;  // index into doc_ids_
  };

  std::vector<Node> nodes_;
  std::vector<std::string> doc_ids_;
};

// Global trie over the base corpus docids. Throws Error(kCollision) naming
// both docids when two encodings coincide, Error(kInvalidInput) when empty.
DocidTrie build_trie(const Vocabulary& vocab,
                     std::span<const std::string> doc_ids);

// Per-query trie over the in-context candidates; same contract.
DocidTrie build_context_trie(const Vocabulary& vocab,
                             std::span<const std::string> candidate_doc_ids);

}  // namespace ctxgr
