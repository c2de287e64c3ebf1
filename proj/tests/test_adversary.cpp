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

#include "peekdec/adversary.hpp"

#include <cmath>
#include <vector>

#include "brute_force.hpp"
#include "doctest.h"
#include "peekdec/context.hpp"
#include "peekdec/decode.hpp"
#include "peekdec/errors.hpp"

using namespace peekdec;

TEST_CASE("equalizer constant at known cells") {
  // (L=1, n=1): the golden ratio.
  CHECK(adversary_constant_a(1, 1) ==
        doctest::Approx(1.6180339887498949).epsilon(1e-12));
  // (L=4, n=2): (5 + sqrt(33)) / 4.
  CHECK(adversary_constant_a(4, 2) ==
        doctest::Approx((5.0 + std::sqrt(33.0)) / 4.0).epsilon(1e-12));
}

TEST_CASE("equalizer constant solves n a^2 - (n+L-1) a - 1 = 0") {
  for (int latency = 1; latency <= 8; ++latency) {
    for (int order = 1; order <= 6; ++order) {
      double a = adversary_constant_a(latency, order);
      CHECK(a > 1.0);
      double residual = order * a * a - (order + latency - 1) * a - 1.0;
      CHECK(std::abs(residual) < 1e-9);
    }
  }
}

TEST_CASE("the two game branches pay the same at the equalizer") {
  for (int latency = 1; latency <= 8; ++latency) {
    for (int order = 1; order <= 6; ++order) {
      double a = adversary_constant_a(latency, order);
      double stay = 1.0 + order * a / (1.0 + (latency - 1) * a);
      double move = 1.0 + (1.0 + order * a) / (latency * a);
      CHECK(stay == doctest::Approx(move).epsilon(1e-9));
      CHECK(adversary_game_floor(latency, order) ==
            doctest::Approx(stay).epsilon(1e-9));
    }
  }
  CHECK(adversary_game_floor(1, 1) ==
        doctest::Approx(2.6180339887498949).epsilon(1e-12));
}

TEST_CASE("prismatic polytope: counts, diameters, distances") {
  // Flat triangle, clique faces: K3 with self-loops.
  StateGraph triangle = build_prismatic_polytope(1, 3, true);
  CHECK(triangle.num_states() == 3);
  CHECK(triangle.diameter() == 1);
  CHECK(triangle.successors(0).size() == 3);

  // Triangular prism: two triangles plus rungs between matching corners.
  StateGraph prism = build_prismatic_polytope(2, 3, true);
  CHECK(prism.num_states() == 6);
  CHECK(prism.diameter() == 2);
  CHECK(prism.distance(0, 3) == 1);   // cross the rung
  CHECK(prism.distance(0, 4) == 2);   // rung plus face move
  CHECK(prism.distance(0, 1) == 1);

  // Degenerate base of one vertex: a (delta-1)-hypercube of corners.
  StateGraph cube = build_prismatic_polytope(3, 1, true);
  CHECK(cube.num_states() == 4);
  CHECK(cube.diameter() == 2);
  CHECK(cube.distance(0, 3) == 2);  // flip both bits

  // Ring faces stretch the diameter additively.
  StateGraph ring = build_prismatic_polytope(2, 6, false);
  CHECK(ring.num_states() == 12);
  CHECK(ring.diameter() == 1 + 3);
}

TEST_CASE("matrix oracle enforces the reveal protocol") {
  MatrixRewardOracle oracle(2, 1, 3);
  oracle.set_column(1, {0.0, 0.0});
  std::vector<int> dummy = {kDummyState};
  CHECK_NOTHROW(oracle.reward(1, 0, dummy));
  CHECK_THROWS_AS(oracle.reward(2, 0, dummy), ProtocolViolationError);
  CHECK_FALSE(oracle.column_set(2));
  oracle.set_column(2, {1.0, 2.0});
  CHECK(oracle.column_set(2));
  CHECK_NOTHROW(oracle.reward(2, 0, dummy));
}

TEST_CASE("matrix oracle pays only after consecutive visits") {
  MatrixRewardOracle oracle(3, 2, 2);
  oracle.set_column(2, {5.0, 6.0, 7.0});
  std::vector<int> settled = {1, 1};
  std::vector<int> arriving = {0, 1};
  std::vector<int> fresh = {kDummyState, 1};
  CHECK(oracle.reward(2, 1, settled) == doctest::Approx(6.0));
  CHECK(oracle.reward(2, 1, arriving) == doctest::Approx(0.0));
  CHECK(oracle.reward(2, 1, fresh) == doctest::Approx(6.0));  // dummy passes
}

TEST_CASE("deterministic game pins greedy to the stay branch exactly") {
  for (int latency : {1, 2, 3}) {
    for (int order : {1, 2}) {
      GreedyPolicy greedy;
      GameOutcome outcome =
          play_deterministic_game(greedy, latency, order, /*delta=*/1);
      double a = adversary_constant_a(latency, order);
      CHECK(outcome.on ==
            doctest::Approx(1.0 + (latency - 1) * a).epsilon(1e-9));
      CHECK(outcome.opt ==
            doctest::Approx(1.0 + (latency - 1) * a + order * a)
                .epsilon(1e-9));
      CHECK(outcome.ratio == doctest::Approx(outcome.floor).epsilon(1e-9));
      CHECK(outcome.audit_violations == 0);
      CHECK(outcome.commitment_consistent);
      CHECK(static_cast<int>(outcome.online_labels.size()) == latency + 3);
    }
  }
}

TEST_CASE("deterministic game holds the floor for every decoder") {
  for (int latency : {1, 2}) {
    PeekConfig config;
    config.latency = latency;
    PeekSearchPolicy peek(config);
    PeekResetPolicy reset(latency);
    RandomizedPeekPolicy randomized(latency, 42);
    GreedyPolicy greedy;
    for (OnlinePolicy* policy :
         std::vector<OnlinePolicy*>{&peek, &reset, &randomized, &greedy}) {
      GameOutcome outcome =
          play_deterministic_game(*policy, latency, /*order=*/1, /*delta=*/1);
      CHECK(outcome.ratio >= outcome.floor - 1e-9);
      CHECK(outcome.commitment_consistent);
      CHECK(outcome.audit_violations == 0);
    }
  }
}

TEST_CASE("game optimum matches exhaustive search on the revealed matrix") {
  // Replay: rebuild the revealed matrix from the outcome labels and check
  // the claimed optimum against brute force.
  GreedyPolicy greedy;
  const int latency = 2, order = 1;
  GameOutcome outcome = play_deterministic_game(greedy, latency, order, 1);
  StateGraph g = build_prismatic_polytope(1, 3, true);
  double a = adversary_constant_a(latency, order);
  MatrixRewardOracle revealed(3, order, latency + 3);
  revealed.set_column(1, {0.0, 0.0, 0.0});
  revealed.set_column(2, {1.0, 1.0, 1.0});
  for (int t = 3; t <= latency + 1; ++t) {
    revealed.set_column(t, {a, a, a});
  }
  int first = outcome.online_labels[0];
  int second = outcome.online_labels[1];
  std::vector<double> col(3);
  for (int v = 0; v < 3; ++v) {
    col[v] = v == first ? 0.0 : (order + g.distance(first, v) - 1) * a;
  }
  revealed.set_column(latency + 2, col);
  if (second == first) {
    revealed.set_column(latency + 3, {0.0, 0.0, 0.0});
  } else {
    int third = 3 - first - second;  // the remaining triangle vertex
    std::vector<double> last(3, 0.0);
    last[third] = a;
    revealed.set_column(latency + 3, last);
  }
  testing::BruteResult brute = testing::brute_force_optimum(revealed, g);
  CHECK(outcome.opt == doctest::Approx(brute.score).epsilon(1e-9));
}

TEST_CASE("randomized instance: shape, optimum, determinism") {
  RandomizedInstance instance =
      randomized_adversary_instance(0.5, /*delta=*/1, /*order=*/1,
                                    /*latency=*/2, /*seed=*/7);
  CHECK(instance.num_states == 2);  // ceil(1/0.5) states on one face
  CHECK(instance.graph.num_states() == 2);
  CHECK(instance.opt == doctest::Approx(3.0));  // L + n
  CHECK(instance.secret_state >= 0);
  CHECK(instance.secret_state < 2);

  // Parking at the secret from the start earns exactly OPT.
  std::vector<int> park(instance.oracle->horizon(), instance.secret_state);
  CHECK(total_reward(park, *instance.oracle, instance.graph) ==
        doctest::Approx(instance.opt));

  // The exhaustive optimum agrees.
  testing::BruteResult brute =
      testing::brute_force_optimum(*instance.oracle, instance.graph);
  CHECK(brute.score == doctest::Approx(instance.opt));

  RandomizedInstance again =
      randomized_adversary_instance(0.5, 1, 1, 2, /*seed=*/7);
  CHECK(again.secret_state == instance.secret_state);
}

TEST_CASE("randomized instance scales with the diameter") {
  RandomizedInstance instance =
      randomized_adversary_instance(0.5, /*delta=*/2, /*order=*/1,
                                    /*latency=*/3, /*seed=*/11);
  CHECK(instance.num_states == 4);  // 2^(delta-1) * ceil(1/eps)
  CHECK(instance.graph.diameter() == 2);
  CHECK(instance.opt == doctest::Approx(4.0));
  testing::BruteResult brute =
      testing::brute_force_optimum(*instance.oracle, instance.graph);
  CHECK(brute.score == doctest::Approx(instance.opt));
}
