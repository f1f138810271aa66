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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxgr/mock_model.hpp"

namespace ctxgr::cli {

struct RunConfig {
  struct Paths {
    std::string corpus;
    std::string queries;
    std::string workdir = "work";
  } paths;
  struct Split {
    double ratio = 0.1;
    std::uint64_t seed = 0;
  } split;
  struct Negatives {
    std::size_t k = 100;
  } negatives;
  struct Instances {
    std::size_t n_shots = 100;
    std::uint64_t seed = 0;
  } instances;
  struct Decode {
    std::size_t beam_width = 10;
  } decode;
  struct Eval {
    std::size_t n = 100;
    std::vector<std::size_t> shots{3, 10, 20, 50, 100};
    std::size_t ece_bins = 10;
    std::string system = "icicle";
    bool oracle = false;
    bool measure_latency = false;
    bool emit_rows = true;
    std::size_t threads = 0;
  } eval;
  MockModelConfig mock;
  struct Dpo {
    double beta = 0.1;
  } dpo;

  // Throws Error(kConfig) on out-of-range fields.
  void validate() const;
  nlohmann::json to_json() const;
  // Unknown keys are rejected so typos surface as config errors. The result
  // is validated.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
};

std::vector<std::size_t> parse_shot_list(const std::string& text);

}  // namespace ctxgr::cli
