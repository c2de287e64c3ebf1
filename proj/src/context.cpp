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

#include "peekdec/context.hpp"

#include <algorithm>

#include "peekdec/state_graph.hpp"

namespace peekdec {

std::int64_t encode_context(std::span<const int> context, int num_states) {
  std::int64_t code = 0;
  for (int s : context) code = code * (num_states + 1) + (s + 1);
  return code;
}

void decode_context(std::int64_t code, int num_states, int order,
                    std::vector<int>& out) {
  out.assign(order, kDummyState);
  for (int j = order - 1; j >= 0; --j) {
    out[j] = static_cast<int>(code % (num_states + 1)) - 1;
    code /= num_states + 1;
  }
}

std::int64_t shift_context_code(std::int64_t code, int next_state,
                                int num_states, int order) {
  std::int64_t modulus = 1;
  for (int j = 0; j < order - 1; ++j) modulus *= num_states + 1;
  return (code % modulus) * (num_states + 1) + (next_state + 1);
}

std::int64_t num_context_codes(int num_states, int order) {
  std::int64_t count = 1;
  for (int j = 0; j < order; ++j) count *= num_states + 1;
  return count;
}

int context_dummy_prefix(int time, int order) {
  return std::clamp(order - time + 1, 0, order);
}

std::vector<int> initial_context(int order) {
  return std::vector<int>(order, kDummyState);
}

namespace {

// Fills slots [pos, order) of ctx with a graph path and fires the callback
// once per completed context.  Slot pos-1 (if real) constrains the choice.
void extend(const StateGraph& graph, std::vector<int>& ctx, std::size_t pos,
            const std::function<void(std::span<const int>)>& fn) {
  if (pos == ctx.size()) {
    fn(std::span<const int>(ctx));
    return;
  }
  int prev = pos == 0 ? kDummyState : ctx[pos - 1];
  if (prev == kDummyState) {
    for (int s = 0; s < graph.num_states(); ++s) {
      ctx[pos] = s;
      extend(graph, ctx, pos + 1, fn);
    }
  } else {
    for (int s : graph.successors(prev)) {
      ctx[pos] = s;
      extend(graph, ctx, pos + 1, fn);
    }
  }
  ctx[pos] = kDummyState;
}

}  // namespace

void for_each_context(const StateGraph& graph, int order, int time,
                      const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> ctx(order, kDummyState);
  extend(graph, ctx, context_dummy_prefix(time, order), fn);
}

void for_each_context_state(
    const StateGraph& graph, int order, int time,
    const std::function<void(std::span<const int>, int)>& fn) {
  for_each_context(graph, order, time, [&](std::span<const int> ctx) {
    int last = order == 0 ? kDummyState : ctx[order - 1];
    if (last == kDummyState) {
      for (int y = 0; y < graph.num_states(); ++y) fn(ctx, y);
    } else {
      for (int y : graph.successors(last)) fn(ctx, y);
    }
  });
}

}  // namespace peekdec
