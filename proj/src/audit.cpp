// Copyright 2026 The peekdec Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "peekdec/audit.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "peekdec/errors.hpp"

namespace peekdec {

AuditedOracle::AuditedOracle(const RewardOracle& base, int latency,
                             bool keep_log)
    : base_(&base), latency_(latency), keep_log_(keep_log) {}

double AuditedOracle::reward(int time, int state,
                             std::span<const int> context) const {
  ++queries_;
  if (time < 1 || time > base_->horizon() || time > now_ + latency_) {
    ++violations_;
    throw LatencyViolationError(
        "query for time " + std::to_string(time) + " from position " +
        std::to_string(now_) + " with latency " + std::to_string(latency_));
  }
  double value = base_->reward(time, state, context);
  if (keep_log_) {
    log_.push_back(AuditRecord{now_, time, state,
                               std::vector<int>(context.begin(), context.end()),
                               value});
  }
  return value;
}

bool commitment_consistent(const std::vector<AuditRecord>& log) {
  std::map<std::tuple<int, int, std::vector<int>>, double> seen;
  for (const auto& rec : log) {
    auto key = std::make_tuple(rec.time, rec.state, rec.context);
    auto [it, inserted] = seen.emplace(key, rec.value);
    if (inserted) continue;
    double ref = it->second;
    double tol = 1e-12 * std::max({1.0, std::fabs(ref), std::fabs(rec.value)});
    if (std::fabs(ref - rec.value) > tol) return false;
  }
  return true;
}

}  // namespace peekdec
