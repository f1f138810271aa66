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

#include "ctxgr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctxgr/error.hpp"

namespace ctxgr {

double ece(std::span<const double> confidences, std::span<const int> truths,
           std::size_t bins) {
  if (confidences.empty()) throw Error(ErrorCode::kInvalidInput, "ece: empty input");
  if (confidences.size() != truths.size()) {
    throw Error(ErrorCode::kInvalidInput, "ece: length mismatch");
  }
  if (bins == 0) throw Error(ErrorCode::kConfig, "ece: bins must be >= 1");

  std::vector<double> conf_sum(bins, 0.0);
  std::vector<double> hit_sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    const double s = confidences[i];
    if (!(s >= 0.0 && s <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput, "ece: confidence outside [0, 1]");
    }
    if (truths[i] != 0 && truths[i] != 1) {
      throw Error(ErrorCode::kInvalidInput, "ece: truth must be 0 or 1");
    }
    const double conf = std::max(s, 1.0 - s);
    const int predicted = s >= 0.5 ? 1 : 0;
    auto b = static_cast<std::size_t>(
        std::floor((conf - 0.5) * 2.0 * static_cast<double>(bins)));
    b = std::min(b, bins - 1);
    conf_sum[b] += conf;
    hit_sum[b] += predicted == truths[i] ? 1.0 : 0.0;
    ++count[b];
  }
  const auto n = static_cast<double>(confidences.size());
  double total = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    const auto m = static_cast<double>(count[b]);
    total += (m / n) * std::abs(hit_sum[b] / m - conf_sum[b] / m);
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace ctxgr
