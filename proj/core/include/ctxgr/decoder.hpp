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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxgr/scorer.hpp"
#include "ctxgr/tokenizer.hpp"
#include "ctxgr/trie.hpp"

namespace ctxgr {

enum class Route { kCopy, kParametric };

std::string_view to_string(Route route);

struct DecodeEntry {
  Route route = Route::kParametric;
  std::string doc_id;  // never contains the [COPY] marker
  double logscore = 0.0;
  TokenSeq token_path;  // includes the leading kCopyId on the copy route
};

struct DecodeResult {
  // Sorted by logscore descending, ties by token_path ascending.
  std::vector<DecodeEntry> entries;
  // Step-0 probability of [COPY] renormalized over the allowed first tokens.
  double copy_confidence = 0.0;

  // 0-based rank of the first entry naming `doc_id`.
  std::optional<std::size_t> rank_of(std::string_view doc_id) const;
};

struct DecodeTiming {
  double first_step_seconds = 0.0;  // bind + first distribution
  double total_seconds = 0.0;
  std::size_t scorer_calls = 0;
};

struct DecodeOptions {
  std::size_t beam_width = 10;
  DecodeTiming* timing = nullptr;  // filled when set
  std::ostream* trace = nullptr;   // one JSON line per step when set
};

// Router-aware trie-constrained beam search.
//
// Step 0 restricts the scorer to {[COPY]} plus the global trie's first tokens
// and renormalizes. Hypotheses opened by [COPY] continue in `context_trie`,
// all others in `global_trie`; every later step is renormalized over the
// hypothesis' allowed children. A hypothesis completes on its eos edge and is
// set aside without taking a beam slot. Search ends when no live hypothesis
// remains, or when beam_width completions exist and none of the live ones can
// still outscore the beam_width-th completion (scores never increase).
//
// Throws Error(kDecode) if nothing completes.
DecodeResult constrained_beam_search(const Scorer& scorer, const Prompt& prompt,
                                     const DocidTrie& global_trie,
                                     const DocidTrie& context_trie,
                                     const DecodeOptions& options = {});

}  // namespace ctxgr
