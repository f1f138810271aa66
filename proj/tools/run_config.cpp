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

#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ctxgr/error.hpp"

namespace ctxgr::cli {
namespace {

void check_keys(const nlohmann::json& j, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kConfig, std::string(where) + " must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kConfig,
                  "unknown config key " + std::string(where) + "." + key);
    }
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end()) field = it->get<T>();
}

const nlohmann::json& section(const nlohmann::json& j, const char* key) {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  auto it = j.find(key);
  return it == j.end() ? kEmpty : *it;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  if (!(split.ratio > 0.0 && split.ratio < 1.0)) fail("split.ratio must be in (0,1)");
  if (negatives.k == 0) fail("negatives.k must be >= 1");
  if (instances.n_shots == 0) fail("instances.n_shots must be >= 1");
  if (decode.beam_width == 0) fail("decode.beam_width must be >= 1");
  if (eval.n == 0) fail("eval.N must be >= 1");
  if (eval.ece_bins == 0) fail("eval.ece_bins must be >= 1");
  if (eval.shots.empty()) fail("eval.shots must not be empty");
  for (std::size_t i = 0; i < eval.shots.size(); ++i) {
    if (eval.shots[i] == 0) fail("eval.shots entries must be >= 1");
    if (i > 0 && eval.shots[i] <= eval.shots[i - 1]) {
      fail("eval.shots must be strictly ascending");
    }
  }
  if (eval.system != "icicle" && eval.system != "bm25") {
    fail("eval.system must be icicle or bm25");
  }
  if (!(dpo.beta >= 0.0)) fail("dpo.beta must be >= 0");
  mock.validate();
}

nlohmann::json RunConfig::to_json() const {
  return {
      {"paths", {{"corpus", paths.corpus}, {"queries", paths.queries}, {"workdir", paths.workdir}}},
      {"split", {{"ratio", split.ratio}, {"seed", split.seed}}},
      {"negatives", {{"k", negatives.k}}},
      {"instances", {{"n_shots", instances.n_shots}, {"seed", instances.seed}}},
      {"decode", {{"beam_width", decode.beam_width}}},
      {"eval",
       {{"N", eval.n},
        {"shots", eval.shots},
        {"ece_bins", eval.ece_bins},
        {"system", eval.system},
        {"oracle", eval.oracle},
        {"measure_latency", eval.measure_latency},
        {"emit_rows", eval.emit_rows},
        {"threads", eval.threads}}},
      {"mock", mock.to_json()},
      {"dpo", {{"beta", dpo.beta}}},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  try {
    check_keys(j, "config",
               {"paths", "split", "negatives", "instances", "decode", "eval", "mock", "dpo"});
    const auto& p = section(j, "paths");
    check_keys(p, "paths", {"corpus", "queries", "workdir"});
    read(p, "corpus", cfg.paths.corpus);
    read(p, "queries", cfg.paths.queries);
    read(p, "workdir", cfg.paths.workdir);

    const auto& s = section(j, "split");
    check_keys(s, "split", {"ratio", "seed"});
    read(s, "ratio", cfg.split.ratio);
    read(s, "seed", cfg.split.seed);

    const auto& n = section(j, "negatives");
    check_keys(n, "negatives", {"k"});
    read(n, "k", cfg.negatives.k);

    const auto& in = section(j, "instances");
    check_keys(in, "instances", {"n_shots", "seed"});
    read(in, "n_shots", cfg.instances.n_shots);
    read(in, "seed", cfg.instances.seed);

    const auto& d = section(j, "decode");
    check_keys(d, "decode", {"beam_width"});
    read(d, "beam_width", cfg.decode.beam_width);

    const auto& e = section(j, "eval");
    check_keys(e, "eval",
               {"N", "shots", "ece_bins", "system", "oracle", "measure_latency",
                "emit_rows", "threads"});
    read(e, "N", cfg.eval.n);
    read(e, "shots", cfg.eval.shots);
    read(e, "ece_bins", cfg.eval.ece_bins);
    read(e, "system", cfg.eval.system);
    read(e, "oracle", cfg.eval.oracle);
    read(e, "measure_latency", cfg.eval.measure_latency);
    read(e, "emit_rows", cfg.eval.emit_rows);
    read(e, "threads", cfg.eval.threads);

    const auto& m = section(j, "mock");
    check_keys(m, "mock", {"copy_temperature", "route_bias", "noise_seed", "noise_stddev"});
    cfg.mock = MockModelConfig::from_json(m);

    const auto& dp = section(j, "dpo");
    check_keys(dp, "dpo", {"beta"});
    read(dp, "beta", cfg.dpo.beta);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kConfig, std::string("malformed config: ") + ex.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::kConfig,
                "config " + path.string() + " is not valid JSON: " + ex.what());
  }
  return from_json(j);
}

std::vector<std::size_t> parse_shot_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::kConfig, "bad shot count \"" + item + "\"");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, "empty shot list");
  return out;
}

}  // namespace ctxgr::cli
