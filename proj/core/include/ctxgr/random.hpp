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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace ctxgr {

// FNV-1a, 64 bit. Stable across platforms and runs.
std::uint64_t stable_hash(std::string_view s);

// Combines two 64-bit values into a well-mixed seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Standard normal draw that is a pure function of `key`.
double hashed_normal(std::uint64_t key);

// Seeded generator whose draws are identical on every standard library.
// std::uniform_*_distribution are implementation-defined, so bounded draws
// are done here by rejection on the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 bits of precision.
  double uniform();

  // Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Partial Fisher-Yates: after the call the first `count` elements are a
  // uniform sample without replacement. The first k draws do not depend on
  // `count`, so prefixes are nested across different counts.
  template <typename T>
  void partial_shuffle(std::span<T> items, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(items.size() - i));
      std::swap(items[i], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ctxgr
