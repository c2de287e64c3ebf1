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

#include <set>
#include <vector>

#include "doctest.h"
#include "peekdec/state_graph.hpp"

using namespace peekdec;

TEST_CASE("encode/decode round-trip over every code") {
  const int num_states = 3, order = 2;
  std::vector<int> context;
  for (std::int64_t code = 0; code < num_context_codes(num_states, order);
       ++code) {
    decode_context(code, num_states, order, context);
    CHECK(encode_context(context, num_states) == code);
  }
}

TEST_CASE("dummy-padded contexts encode with leading zero digits") {
  std::vector<int> all_dummy = {kDummyState, kDummyState};
  CHECK(encode_context(all_dummy, 4) == 0);
  // Oldest slot is the most significant digit (base num_states + 1).
  std::vector<int> mixed = {kDummyState, 2};
  CHECK(encode_context(mixed, 4) == 3);
  std::vector<int> full = {1, 0};
  CHECK(encode_context(full, 4) == 2 * 5 + 1);
}

TEST_CASE("shift_context_code matches erase-front-push-back") {
  const int num_states = 3, order = 2;
  std::vector<int> context = {kDummyState, 1};
  std::int64_t code = encode_context(context, num_states);
  std::int64_t shifted = shift_context_code(code, 2, num_states, order);
  std::vector<int> expected = {1, 2};
  CHECK(shifted == encode_context(expected, num_states));
}

TEST_CASE("dummy prefix shrinks with time") {
  CHECK(context_dummy_prefix(1, 3) == 3);
  CHECK(context_dummy_prefix(2, 3) == 2);
  CHECK(context_dummy_prefix(4, 3) == 0);
  CHECK(context_dummy_prefix(99, 3) == 0);
  CHECK(initial_context(2) == std::vector<int>{kDummyState, kDummyState});
}

TEST_CASE("for_each_context enumerates exactly the path-valid contexts") {
  // Directed cycle: valid order-2 contexts at t>=3 are consecutive pairs.
  StateGraph g(3, {{1}, {2}, {0}});
  std::set<std::vector<int>> seen;
  for_each_context(g, 2, 3, [&](std::span<const int> ctx) {
    seen.insert(std::vector<int>(ctx.begin(), ctx.end()));
  });
  std::set<std::vector<int>> expected = {{0, 1}, {1, 2}, {2, 0}};
  CHECK(seen == expected);

  // At t=1 only the all-dummy context exists.
  seen.clear();
  for_each_context(g, 2, 1, [&](std::span<const int> ctx) {
    seen.insert(std::vector<int>(ctx.begin(), ctx.end()));
  });
  CHECK(seen ==
        std::set<std::vector<int>>{{kDummyState, kDummyState}});

  // At t=2 the newest slot is real, the older one still dummy.
  seen.clear();
  for_each_context(g, 2, 2, [&](std::span<const int> ctx) {
    seen.insert(std::vector<int>(ctx.begin(), ctx.end()));
  });
  CHECK(seen == std::set<std::vector<int>>{{kDummyState, 0},
                                           {kDummyState, 1},
                                           {kDummyState, 2}});
}

TEST_CASE("for_each_context_state pairs contexts with legal moves") {
  StateGraph g(3, {{1}, {2}, {0}});
  std::set<std::pair<std::vector<int>, int>> seen;
  for_each_context_state(g, 1, 2, [&](std::span<const int> ctx, int y) {
    seen.insert({std::vector<int>(ctx.begin(), ctx.end()), y});
  });
  // Contexts at t=2 are the three singleton states; each has one successor.
  std::set<std::pair<std::vector<int>, int>> expected = {
      {{0}, 1}, {{1}, 2}, {{2}, 0}};
  CHECK(seen == expected);

  // All-dummy context allows every state.
  seen.clear();
  for_each_context_state(g, 1, 1, [&](std::span<const int> ctx, int y) {
    seen.insert({std::vector<int>(ctx.begin(), ctx.end()), y});
  });
  CHECK(seen.size() == 3);
  for (const auto& [ctx, y] : seen) CHECK(ctx == std::vector<int>{kDummyState});
}

TEST_CASE("context enumeration is ascending in code order") {
  StateGraph g = StateGraph::fully_connected(3);
  std::int64_t last = -1;
  for_each_context(g, 2, 5, [&](std::span<const int> ctx) {
    std::int64_t code = encode_context(ctx, 3);
    CHECK(code > last);
    last = code;
  });
}
