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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ctxgr/error.hpp"
#include "run_config.hpp"

namespace ctxgr::cli {
namespace {

TEST(RunConfig, DefaultsRoundTrip) {
  const RunConfig a;
  const auto b = RunConfig::from_json(a.to_json());
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.eval.shots, (std::vector<std::size_t>{3, 10, 20, 50, 100}));
  EXPECT_EQ(a.decode.beam_width, 10u);
  EXPECT_EQ(a.dpo.beta, 0.1);
}

TEST(RunConfig, PartialOverride) {
  const auto c = RunConfig::from_json(
      nlohmann::json::parse(R"({"split":{"ratio":0.2},"eval":{"N":7},"mock":{"noise_seed":3}})"));
  EXPECT_EQ(c.split.ratio, 0.2);
  EXPECT_EQ(c.split.seed, 0u);
  EXPECT_EQ(c.eval.n, 7u);
  EXPECT_EQ(c.mock.noise_seed, std::uint64_t{3});
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  for (const char* text : {R"({"splt":{}})", R"({"split":{"ratoi":0.1}})",
                           R"({"split":{"ratio":1.5}})", R"({"decode":{"beam_width":0}})",
                           R"({"eval":{"shots":[]}})", R"({"mock":{"copy_temperature":0}})",
                           R"({"split":{"ratio":"x"}})"}) {
    try {
      RunConfig::from_json(nlohmann::json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig) << text;
    }
  }
}

TEST(RunConfig, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "ctxgr_cfg_test.json";
  std::ofstream(path) << R"({"negatives":{"k":12}})";
  EXPECT_EQ(RunConfig::load(path).negatives.k, 12u);
  std::filesystem::remove(path);
  EXPECT_THROW(RunConfig::load(path), Error);
}

TEST(ShotList, Parses) {
  EXPECT_EQ(parse_shot_list("3,10,20"), (std::vector<std::size_t>{3, 10, 20}));
  EXPECT_EQ(parse_shot_list("5"), std::vector<std::size_t>{5});
  EXPECT_THROW(parse_shot_list(""), Error);
  EXPECT_THROW(parse_shot_list("3,,4"), Error);
  EXPECT_THROW(parse_shot_list("3x"), Error);
}

}  // namespace
}  // namespace ctxgr::cli
