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

#ifndef PEEKDEC_REWARD_HPP_
#define PEEKDEC_REWARD_HPP_

#include <memory>
#include <span>
#include <vector>

#include "peekdec/context.hpp"
#include "peekdec/state_graph.hpp"

namespace peekdec {

// Time-indexed reward of committing `state` at `time` given the previous
// `order()` states.  Times are 1-based and run up to horizon().  The context
// span has exactly order() entries (oldest first) and may carry a dummy
// prefix near the sequence start.  Decoders assume rewards are finite and
// non-negative; raw model scores can be negative and go through
// positivize_offset() first.
class RewardOracle {
 public:
  virtual ~RewardOracle() = default;
  virtual int order() const = 0;
  virtual int horizon() const = 0;
  virtual double reward(int time, int state,
                        std::span<const int> context) const = 0;
};

// Fully materialized reward table, indexed by (time, context code, state).
// This is the ingestion path for anything that can precompute its scores
// (HMM adapters, maxent-style local scorers, test fixtures, adversarial
// matrices that do not need lazy reveals).
class DenseRewardTable final : public RewardOracle {
 public:
  DenseRewardTable(int num_states, int order, int horizon, double fill = 0.0);

  int num_states() const { return num_states_; }
  int order() const override { return order_; }
  int horizon() const override { return horizon_; }

  void set(int time, std::span<const int> context, int state, double value);
  double reward(int time, int state,
                std::span<const int> context) const override;

  // Fills a deterministic pseudo-random table with values in [lo, hi).
  static DenseRewardTable random(int num_states, int order, int horizon,
                                 std::uint64_t seed, double lo, double hi);

 private:
  std::int64_t index(int time, std::int64_t code, int state) const;

  int num_states_, order_, horizon_;
  std::int64_t codes_;
  std::vector<double> values_;
};

// base + offset on every query.  Keeps a non-owning pointer; the base oracle
// must outlive the view.
class ShiftedOracle final : public RewardOracle {
 public:
  ShiftedOracle(const RewardOracle& base, double offset)
      : base_(&base), offset_(offset) {}

  int order() const override { return base_->order(); }
  int horizon() const override { return base_->horizon(); }
  double reward(int time, int state,
                std::span<const int> context) const override {
    return base_->reward(time, state, context) + offset_;
  }
  double offset() const { return offset_; }

 private:
  const RewardOracle* base_;
  double offset_;
};

// Embeds the base instance in a longer one with `margin` zero-reward steps
// on each side, the construction the competitive-ratio proofs assume.  The
// base oracle is queried only for times that land inside the real window;
// margin steps pay zero regardless of state, and context slots that predate
// the real window are masked to dummies.  The masking makes the real window
// behave exactly like the base instance for any path, so the padded optimum
// equals the base optimum and padding only changes what an online decoder
// does with its lookahead at the boundaries.
class PaddedOracle final : public RewardOracle {
 public:
  PaddedOracle(const RewardOracle& base, int margin);

  int order() const override { return base_->order(); }
  int horizon() const override { return base_->horizon() + 2 * margin_; }
  int margin() const { return margin_; }
  double reward(int time, int state,
                std::span<const int> context) const override;

 private:
  const RewardOracle* base_;
  int margin_;
  mutable std::vector<int> scratch_;  // context translated to base times
};

// Smallest uniform shift p >= 0 making every path-valid (time, state,
// context) reward non-negative: p = max(0, -min raw reward).  Throws
// UnboundedRewardError if some reachable reward is -inf (or NaN).  A uniform
// shift leaves the argmax path set untouched, so decoding the shifted
// instance solves the raw one.
double positivize_offset(const RewardOracle& raw, const StateGraph& graph);

// Decoded label sequence plus its per-step realized rewards.
struct DecodePath {
  std::vector<int> labels;         // labels[t-1] is the state at time t
  std::vector<double> step_rewards;
  double total = 0.0;              // == sum of step_rewards
};

// Evaluates `labels` under the oracle: walks the sequence with the proper
// rolling context (dummy-padded at the start) and sums rewards.  Throws
// EdgeViolationError if consecutive labels are not connected in the graph.
DecodePath evaluate_path(std::span<const int> labels,
                         const RewardOracle& oracle, const StateGraph& graph);

double total_reward(std::span<const int> labels, const RewardOracle& oracle,
                    const StateGraph& graph);

}  // namespace peekdec

#endif  // PEEKDEC_REWARD_HPP_
