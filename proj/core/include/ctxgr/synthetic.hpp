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
#include <vector>

#include "ctxgr/corpus.hpp"

namespace ctxgr {

// Topic-clustered corpus of pseudo-word documents. Titles share a topic
// word as their first token, so docid tries have shared prefixes.
struct SyntheticConfig {
  std::size_t num_docs = 1000;
  std::size_t num_topics = 50;
  std::size_t text_words = 80;
  std::size_t query_words = 8;
  std::uint64_t seed = 0;
};

struct SyntheticDataset {
  Corpus corpus;
  std::vector<QueryRecord> queries;  // one per document
};

SyntheticDataset make_synthetic(const SyntheticConfig& config);

}  // namespace ctxgr
