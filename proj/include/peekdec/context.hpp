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

#ifndef PEEKDEC_CONTEXT_HPP_
#define PEEKDEC_CONTEXT_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace peekdec {

class StateGraph;

// Placeholder for "before the sequence started".  A context of order n at
// time i holds the states at times i-n..i-1, oldest first; slots whose time
// would be < 1 hold kDummyState.  Dummies therefore only ever form a prefix.
inline constexpr int kDummyState = -1;

// Contexts are packed into base-(K+1) codes: dummy -> digit 0, state s ->
// digit s+1, oldest slot most significant.  Ascending code order is then
// exactly lexicographic order oldest-first, which is what the canonical
// tie-breaking rule wants when scanning trellis cells.
std::int64_t encode_context(std::span<const int> context, int num_states);
void decode_context(std::int64_t code, int num_states, int order,
                    std::vector<int>& out);

// Drops the oldest slot, appends next_state.
std::int64_t shift_context_code(std::int64_t code, int next_state,
                                int num_states, int order);

// (K+1)^order, the number of context codes.
std::int64_t num_context_codes(int num_states, int order);

// Number of leading dummy slots of a context at `time` (1-based).
int context_dummy_prefix(int time, int order);

// All-dummy history of length `order` (the decoding start context).
std::vector<int> initial_context(int order);

// Enumerates every path-valid context at `time`: the dummy prefix has the
// length dictated by `time`, and consecutive real slots follow graph edges.
// Contexts are visited in ascending lexicographic (= code) order.  The span
// passed to the callback is only valid during the call.
void for_each_context(const StateGraph& graph, int order, int time,
                      const std::function<void(std::span<const int>)>& fn);

// As above, but additionally enumerates every state y that may follow the
// context (successors of the newest real slot; every state when the context
// is all-dummy), again in ascending order.
void for_each_context_state(
    const StateGraph& graph, int order, int time,
    const std::function<void(std::span<const int>, int)>& fn);

}  // namespace peekdec

#endif  // PEEKDEC_CONTEXT_HPP_
