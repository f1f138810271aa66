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

#include "ctxgr/trie.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "ctxgr/error.hpp"

namespace ctxgr {

class TrieBuilder {
 public:
  explicit TrieBuilder(const Vocabulary& vocab) : vocab_(vocab) {}

  void insert(const std::string& doc_id) {
    const TokenSeq path = vocab_.encode_docid(doc_id);
    if (path.size() == 1) {
      throw Error(ErrorCode::kInvalidInput,
                  "docid \"" + doc_id + "\" has no tokens");
    }
    if (std::find(path.begin(), path.end(), kUnkId) != path.end()) {
      throw Error(ErrorCode::kInvalidInput,
                  "docid \"" + doc_id + "\" has words outside the vocabulary");
    }
    DocidTrie::NodeId node = DocidTrie::kRoot;
    for (TokenId token : path) {
      auto& edges = trie_.nodes_[node].edges;
      auto it = std::lower_bound(
          edges.begin(), edges.end(), token,
          [](const DocidTrie::Edge& e, TokenId t) { return e.token < t; });
      if (it != edges.end() && it->token == token) {
        node = it->child;
        continue;
      }
      const auto child = static_cast<DocidTrie::NodeId>(trie_.nodes_.size());
      edges.insert(it, DocidTrie::Edge{token, child});
      trie_.nodes_.emplace_back();
      node = child;
    }
    auto& leaf = trie_.nodes_[node];
    if (leaf.terminal >= 0) {
      const auto& other = trie_.doc_ids_[static_cast<std::size_t>(leaf.terminal)];
      if (other == doc_id) return;  // repeated docid, not a collision
      throw Error(ErrorCode::kCollision, "docids \"" + other + "\" and \"" +
                                             doc_id +
                                             "\" encode to the same tokens");
    }
    leaf.terminal = static_cast<std::int32_t>(trie_.doc_ids_.size());
    trie_.doc_ids_.push_back(doc_id);
  }

  DocidTrie finish() && { return std::move(trie_); }

 private:
  const Vocabulary& vocab_;
  DocidTrie trie_;
};

DocidTrie::DocidTrie() : nodes_(1) {}

std::optional<DocidTrie::NodeId> DocidTrie::step(NodeId node,
                                                 TokenId token) const {
  const auto& edges = nodes_[node].edges;
  auto it = std::lower_bound(
      edges.begin(), edges.end(), token,
      [](const Edge& e, TokenId t) { return e.token < t; });
  if (it == edges.end() || it->token != token) return std::nullopt;
  return it->child;
}

std::optional<DocidTrie::NodeId> DocidTrie::walk(
    std::span<const TokenId> path) const {
  NodeId node = kRoot;
  for (TokenId t : path) {
    auto next = step(node, t);
    if (!next) return std::nullopt;
    node = *next;
  }
  return node;
}

const std::string* DocidTrie::terminal(NodeId node) const {
  const auto t = nodes_[node].terminal;
  return t < 0 ? nullptr : &doc_ids_[static_cast<std::size_t>(t)];
}

std::vector<TokenId> DocidTrie::allowed_tokens(
    std::span<const TokenId> prefix) const {
  std::vector<TokenId> out;
  auto node = walk(prefix);
  if (!node) return out;
  for (const auto& e : nodes_[*node].edges) out.push_back(e.token);
  return out;
}

bool DocidTrie::contains(std::span<const TokenId> encoded) const {
  auto node = walk(encoded);
  return node && terminal(*node) != nullptr;
}

std::vector<TokenSeq> DocidTrie::paths() const {
  std::vector<TokenSeq> out;
  TokenSeq prefix;
  // Iterative DFS keeps deep tries off the call stack.
  struct Frame {
    NodeId node;
    std::size_t next_edge;
  };
  std::vector<Frame> stack{{kRoot, 0}};
  while (!stack.empty()) {
    auto& top = stack.back();
    const auto& edges = nodes_[top.node].edges;
    if (top.next_edge == 0 && terminal(top.node) != nullptr) {
      out.push_back(prefix);
    }
    if (top.next_edge == edges.size()) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    const Edge e = edges[top.next_edge++];
    prefix.push_back(e.token);
    stack.push_back({e.child, 0});
  }
  return out;
}

namespace {

constexpr char kMagic[4] = {'C', 'G', 'T', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw Error(ErrorCode::kInvalidInput, "trie snapshot: truncated");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

void DocidTrie::save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(nodes_.size()));
  // Preorder; the root carries token id 0, which is ignored on load.
  struct Frame {
    NodeId node;
    TokenId token;
  };
  std::vector<Frame> stack{{kRoot, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const auto& n = nodes_[f.node];
    put<std::uint32_t>(out, f.token);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(n.edges.size()));
    put<std::uint8_t>(out, n.terminal >= 0 ? 1 : 0);
    if (n.terminal >= 0) {
      const auto& id = doc_ids_[static_cast<std::size_t>(n.terminal)];
      put<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
      out.write(id.data(), static_cast<std::streamsize>(id.size()));
    }
    for (auto it = n.edges.rbegin(); it != n.edges.rend(); ++it) {
      stack.push_back({it->child, it->token});
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "trie snapshot: write failed");
}

DocidTrie DocidTrie::load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) ||
      !std::equal(magic, magic + 4, kMagic)) {
    throw Error(ErrorCode::kInvalidInput, "trie snapshot: bad magic");
  }
  const auto count = get<std::uint32_t>(in);
  if (count == 0) throw Error(ErrorCode::kInvalidInput, "trie snapshot: no root");

  DocidTrie trie;
  trie.nodes_.clear();
  trie.nodes_.reserve(count);
  // Each frame is a node still waiting for `remaining` children.
  struct Frame {
    NodeId node;
    std::uint32_t remaining;
  };
  std::vector<Frame> stack;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto token = get<std::uint32_t>(in);
    const auto child_count = get<std::uint32_t>(in);
    const auto is_terminal = get<std::uint8_t>(in);
    const auto id = static_cast<NodeId>(trie.nodes_.size());
    trie.nodes_.emplace_back();
    if (is_terminal) {
      const auto len = get<std::uint32_t>(in);
      std::string doc(len, '\0');
      if (!in.read(doc.data(), len)) {
        throw Error(ErrorCode::kInvalidInput, "trie snapshot: truncated docid");
      }
      trie.nodes_.back().terminal = static_cast<std::int32_t>(trie.doc_ids_.size());
      trie.doc_ids_.push_back(std::move(doc));
    }
    if (i > 0) {
      if (stack.empty()) {
        throw Error(ErrorCode::kInvalidInput, "trie snapshot: orphan node");
      }
      auto& parent = trie.nodes_[stack.back().node];
      if (!parent.edges.empty() && parent.edges.back().token >= token) {
        throw Error(ErrorCode::kInvalidInput, "trie snapshot: unsorted children");
      }
      parent.edges.push_back({token, id});
      if (--stack.back().remaining == 0) stack.pop_back();
    }
    if (child_count > 0) stack.push_back({id, child_count});
  }
  if (!stack.empty()) {
    throw Error(ErrorCode::kInvalidInput, "trie snapshot: missing nodes");
  }
  return trie;
}

bool operator==(const DocidTrie& a, const DocidTrie& b) {
  if (a.nodes_.size() != b.nodes_.size() || a.doc_ids_.size() != b.doc_ids_.size()) {
    return false;
  }
  // Compare structurally by parallel walk; node numbering may differ.
  struct Pair {
    DocidTrie::NodeId x, y;
  };
  std::vector<Pair> stack{{DocidTrie::kRoot, DocidTrie::kRoot}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const auto& nx = a.nodes_[x];
    const auto& ny = b.nodes_[y];
    const auto* tx = a.terminal(x);
    const auto* ty = b.terminal(y);
    if ((tx == nullptr) != (ty == nullptr) || (tx && *tx != *ty)) return false;
    if (nx.edges.size() != ny.edges.size()) return false;
    for (std::size_t i = 0; i < nx.edges.size(); ++i) {
      if (nx.edges[i].token != ny.edges[i].token) return false;
      stack.push_back({nx.edges[i].child, ny.edges[i].child});
    }
  }
  return true;
}

DocidTrie build_trie(const Vocabulary& vocab,
                     std::span<const std::string> doc_ids) {
  if (doc_ids.empty()) {
    throw Error(ErrorCode::kInvalidInput, "build_trie: no docids");
  }
  TrieBuilder builder(vocab);
  for (const auto& id : doc_ids) builder.insert(id);
  return std::move(builder).finish();
}

DocidTrie build_context_trie(const Vocabulary& vocab,
                             std::span<const std::string> candidate_doc_ids) {
  return build_trie(vocab, candidate_doc_ids);
}

}  // namespace ctxgr
