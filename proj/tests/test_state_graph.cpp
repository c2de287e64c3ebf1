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

#include "peekdec/state_graph.hpp"

#include "doctest.h"
#include "peekdec/errors.hpp"

using namespace peekdec;

TEST_CASE("fully connected graph has diameter 1") {
  StateGraph g = StateGraph::fully_connected(3);
  CHECK(g.num_states() == 3);
  CHECK(g.diameter() == 1);
  for (int u = 0; u < 3; ++u) {
    CHECK(g.successors(u).size() == 3);
    for (int v = 0; v < 3; ++v) {
      CHECK(g.has_edge(u, v));
      CHECK(g.distance(u, v) == (u == v ? 0 : 1));
    }
  }
}

TEST_CASE("single state convention: diameter 1") {
  StateGraph g(1, {{0}});
  CHECK(g.diameter() == 1);
  CHECK(g.distance(0, 0) == 0);
}

TEST_CASE("directed 4-cycle has diameter 3") {
  StateGraph g(4, {{1}, {2}, {3}, {0}});
  CHECK(g.diameter() == 3);
  CHECK(g.distance(0, 3) == 3);
  CHECK(g.distance(3, 0) == 1);
}

TEST_CASE("transpose flips asymmetric distances") {
  // 0 -> 1 cheaply, 1 -> 0 only the long way round.
  StateGraph g(3, {{1}, {2, 0}, {0}});
  StateGraph t = g.transposed();
  CHECK(g.distance(0, 2) == 2);
  CHECK(t.distance(2, 0) == 2);
  CHECK(g.diameter() == t.diameter());
}

TEST_CASE("unreachable states are rejected") {
  CHECK_THROWS_AS(StateGraph(2, {{0}, {1}}), NotErgodicError);
  CHECK_THROWS_AS(StateGraph(3, {{1}, {0}, {0}}), NotErgodicError);
}

TEST_CASE("malformed graphs are rejected") {
  CHECK_THROWS(StateGraph(0, {}));
  CHECK_THROWS(StateGraph(2, {{1}, {}}));   // no outgoing edge
  CHECK_THROWS(StateGraph(2, {{1}, {2}}));  // target out of range
}

TEST_CASE("successor lists are sorted and deduplicated") {
  StateGraph g(2, {{1, 0, 1}, {0, 0}});
  CHECK(g.successors(0) == std::vector<int>{0, 1});
  CHECK(g.successors(1) == std::vector<int>{0});
}

TEST_CASE("free diameter helper agrees with the member") {
  std::vector<std::vector<int>> succ = {{1}, {2}, {0, 1}};
  CHECK(compute_diameter(3, succ) == StateGraph(3, succ).diameter());
  CHECK_THROWS_AS(compute_diameter(2, {{0}, {1}}), NotErgodicError);
}
