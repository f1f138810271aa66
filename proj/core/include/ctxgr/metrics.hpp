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
#include <span>

namespace ctxgr {

inline constexpr std::size_t kDefaultEceBins = 10;

// Expected calibration error of the routing decision.
//
// `confidences` are copy probabilities s_i, `truths` the modes z_i in {0, 1}
// (1 when the gold document is in the context). The prediction is
// z_hat = [s >= 0.5]; its confidence max(s, 1 - s) is binned into `bins`
// equal-width bins over [0.5, 1], left-closed, the last bin closed on both
// ends. Returns sum_m |B_m| / N * |acc(B_m) - conf(B_m)|.
double ece(std::span<const double> confidences, std::span<const int> truths,
           std::size_t bins = kDefaultEceBins);

}  // namespace ctxgr
