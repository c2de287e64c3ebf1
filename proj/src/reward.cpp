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

#include "peekdec/reward.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "peekdec/errors.hpp"
#include "peekdec/rng.hpp"

namespace peekdec {

DenseRewardTable::DenseRewardTable(int num_states, int order, int horizon,
                                   double fill)
    : num_states_(num_states),
      order_(order),
      horizon_(horizon),
      codes_(num_context_codes(num_states, order)),
      values_(static_cast<std::size_t>(horizon) * codes_ * num_states, fill) {
  if (num_states < 1 || order < 1 || horizon < 1) {
    throw std::invalid_argument("dense table needs positive dimensions");
  }
}

std::int64_t DenseRewardTable::index(int time, std::int64_t code,
                                     int state) const {
  return (static_cast<std::int64_t>(time - 1) * codes_ + code) * num_states_ +
         state;
}

void DenseRewardTable::set(int time, std::span<const int> context, int state,
                           double value) {
  values_[index(time, encode_context(context, num_states_), state)] = value;
}

double DenseRewardTable::reward(int time, int state,
                                std::span<const int> context) const {
  return values_[index(time, encode_context(context, num_states_), state)];
}

DenseRewardTable DenseRewardTable::random(int num_states, int order,
                                          int horizon, std::uint64_t seed,
                                          double lo, double hi) {
  DenseRewardTable table(num_states, order, horizon);
  Rng rng(seed);
  for (double& v : table.values_) v = lo + (hi - lo) * rng.next_double();
  return table;
}

PaddedOracle::PaddedOracle(const RewardOracle& base, int margin)
    : base_(&base), margin_(margin), scratch_(base.order(), kDummyState) {
  if (margin < 0) throw std::invalid_argument("padding margin must be >= 0");
}

double PaddedOracle::reward(int time, int state,
                            std::span<const int> context) const {
  int base_time = time - margin_;
  if (base_time < 1 || base_time > base_->horizon()) return 0.0;
  // Context slots that predate the real window become dummies; the base
  // instance never sees margin states.
  int order = base_->order();
  for (int j = 0; j < order; ++j) {
    int slot_time = time - order + j;
    scratch_[j] = slot_time <= margin_ ? kDummyState : context[j];
  }
  return base_->reward(base_time, state, std::span<const int>(scratch_));
}

double positivize_offset(const RewardOracle& raw, const StateGraph& graph) {
  double low = 0.0;
  const int order = raw.order();
  for (int time = 1; time <= raw.horizon(); ++time) {
    for_each_context_state(
        graph, order, time, [&](std::span<const int> ctx, int y) {
          double r = raw.reward(time, y, ctx);
          if (std::isnan(r) || r == -std::numeric_limits<double>::infinity()) {
            throw UnboundedRewardError(
                "reward at time " + std::to_string(time) + ", state " +
                std::to_string(y) + " admits no finite shift");
          }
          if (r < low) low = r;
        });
  }
  return -low;
}

DecodePath evaluate_path(std::span<const int> labels,
                         const RewardOracle& oracle, const StateGraph& graph) {
  if (static_cast<int>(labels.size()) != oracle.horizon()) {
    throw EdgeViolationError("path length " + std::to_string(labels.size()) +
                             " does not match horizon " +
                             std::to_string(oracle.horizon()));
  }
  DecodePath out;
  out.labels.assign(labels.begin(), labels.end());
  out.step_rewards.reserve(labels.size());
  std::vector<int> ctx = initial_context(oracle.order());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    int y = labels[t];
    if (y < 0 || y >= graph.num_states()) {
      throw EdgeViolationError("label out of range at step " +
                               std::to_string(t + 1));
    }
    if (t > 0 && !graph.has_edge(labels[t - 1], y)) {
      throw EdgeViolationError(
          "no edge " + std::to_string(labels[t - 1]) + " -> " +
          std::to_string(y) + " at step " + std::to_string(t + 1));
    }
    double r = oracle.reward(static_cast<int>(t) + 1, y,
                             std::span<const int>(ctx));
    out.step_rewards.push_back(r);
    out.total += r;
    ctx.erase(ctx.begin());
    ctx.push_back(y);
  }
  return out;
}

double total_reward(std::span<const int> labels, const RewardOracle& oracle,
                    const StateGraph& graph) {
  return evaluate_path(labels, oracle, graph).total;
}

}  // namespace peekdec
