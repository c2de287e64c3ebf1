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

#ifndef PEEKDEC_AUDIT_HPP_
#define PEEKDEC_AUDIT_HPP_

#include <cstdint>
#include <vector>

#include "peekdec/reward.hpp"

namespace peekdec {

struct AuditRecord {
  int position;  // decoder position when the query happened
  int time;      // queried time step
  int state;
  std::vector<int> context;
  double value;
};

// Windowed view of an oracle: with the decoder at position i, only times
// t <= i + latency (and 1 <= t <= horizon) may be queried.  Every violation
// bumps a sticky counter and raises LatencyViolationError, so a decoder that
// completes a run is certified to have respected its budget.  With keep_log
// on, every query is recorded; replaying the log shows whether a
// time-varying oracle kept each (time, state, context) value constant across
// its whole visibility window.
class AuditedOracle final : public RewardOracle {
 public:
  AuditedOracle(const RewardOracle& base, int latency, bool keep_log = false);

  void set_position(int now) { now_ = now; }
  int position() const { return now_; }

  std::int64_t query_count() const { return queries_; }
  std::int64_t violation_count() const { return violations_; }
  const std::vector<AuditRecord>& log() const { return log_; }

  int order() const override { return base_->order(); }
  int horizon() const override { return base_->horizon(); }
  double reward(int time, int state,
                std::span<const int> context) const override;

 private:
  const RewardOracle* base_;
  int latency_;
  bool keep_log_;
  int now_ = 1;
  mutable std::int64_t queries_ = 0;
  mutable std::int64_t violations_ = 0;
  mutable std::vector<AuditRecord> log_;
};

// True when every (time, state, context) key maps to a single value across
// the whole log (1e-12 relative tolerance).  An adaptive oracle that edits a
// cell after showing it to the decoder fails this.
bool commitment_consistent(const std::vector<AuditRecord>& log);

}  // namespace peekdec

#endif  // PEEKDEC_AUDIT_HPP_
