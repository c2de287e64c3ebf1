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

#include "peekdec/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace peekdec;

TEST_CASE("optimal discount at known cells") {
  CHECK(optimal_gamma(1, 1, 1).value() == doctest::Approx(0.5));
  CHECK(optimal_gamma(3, 1, 1).value() ==
        doctest::Approx(std::pow(0.25, 1.0 / 3.0)).epsilon(1e-12));
  CHECK(optimal_gamma(2, 2, 1).value() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Budget below the effective diameter: no guarantee, empty.
  CHECK_FALSE(optimal_gamma(1, 3, 1).has_value());
  CHECK_FALSE(optimal_gamma(1, 1, 3).has_value());
}

TEST_CASE("lookahead upper bound at known cells") {
  CHECK(peek_search_upper_bound(1, 1, 1).value() == doctest::Approx(4.0));
  CHECK(peek_search_upper_bound(5, 1, 1).value() ==
        doctest::Approx(1.2 * std::pow(6.0, 0.2)).epsilon(1e-12));
  CHECK_FALSE(peek_search_upper_bound(1, 2, 2).has_value());
}

TEST_CASE("lookahead upper bound decreases toward one in L") {
  double previous = peek_search_upper_bound(1, 1, 1).value();
  for (int latency = 2; latency <= 64; ++latency) {
    double current = peek_search_upper_bound(latency, 1, 1).value();
    CHECK(current < previous);
    previous = current;
  }
  CHECK(previous > 1.0);
  CHECK(previous < 1.1);
}

TEST_CASE("randomized upper bound at known cells") {
  CHECK(randomized_upper_bound(1, 1, 1).value() == doctest::Approx(2.0));
  CHECK(randomized_upper_bound(9, 2, 1).value() == doctest::Approx(1.25));
  // Needs L+1 to clear the effective diameter.
  CHECK_FALSE(randomized_upper_bound(1, 2, 1).has_value());
  CHECK(randomized_upper_bound(2, 2, 1).value() == doctest::Approx(3.0));
}

TEST_CASE("reset upper bound at known cells") {
  CHECK(peek_reset_upper_bound(50, 1, 1).value() ==
        doctest::Approx(1.0 + 4.0 / 43.0).epsilon(1e-12));
  CHECK(peek_reset_upper_bound(8, 1, 1).value() == doctest::Approx(5.0));
  CHECK_FALSE(peek_reset_upper_bound(7, 1, 1).has_value());
}

TEST_CASE("deterministic lower bound constants") {
  CHECK(deterministic_lower_bound(1, 1, 1) == doctest::Approx(2.5));
  CHECK(deterministic_lower_bound(4, 1, 1) ==
        doctest::Approx(1.0 + 0.25 + 1.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("the two lower-bound forms agree on the full grid") {
  for (int latency = 1; latency <= 10; ++latency) {
    for (int order = 1; order <= 10; ++order) {
      for (int delta = 1; delta <= 10; ++delta) {
        double a = deterministic_lower_bound(latency, order, delta);
        double b =
            deterministic_lower_bound_table_form(latency, order, delta);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("lower bound stays strictly above one and sinks with L") {
  double previous = deterministic_lower_bound(1, 1, 1);
  for (int latency = 2; latency <= 50; ++latency) {
    double current = deterministic_lower_bound(latency, 1, 1);
    CHECK(current > 1.0);
    CHECK(current < previous);
    previous = current;
  }
}

TEST_CASE("randomized lower bound known cells") {
  // diameter 1: 1 + (1-eps) n / (L + eps n).
  CHECK(randomized_lower_bound(1, 1, 1, 0.5) ==
        doctest::Approx(1.0 + 0.5 / 1.5).epsilon(1e-12));
  CHECK(randomized_lower_bound(2, 1, 1, 0.5) ==
        doctest::Approx(1.0 + 0.5 / 2.5).epsilon(1e-12));
  // Larger diameter: 1 + (u-1) n / (u L + n) with u = 2^(delta-1) ceil(1/eps).
  double u = 4.0;  // delta=2, eps=0.5 -> 2 * 2
  CHECK(randomized_lower_bound(3, 1, 2, 0.5) ==
        doctest::Approx(1.0 + (u - 1.0) / (u * 3.0 + 1.0)).epsilon(1e-12));
}

TEST_CASE("randomized lower bound tightens as eps shrinks") {
  double loose = randomized_lower_bound(5, 1, 1, 0.5);
  double tight = randomized_lower_bound(5, 1, 1, 0.01);
  CHECK(tight > loose);
  CHECK(tight < 1.0 + 1.0 / 5.0 + 1e-9);  // approaches 1 + n/L from below
}

TEST_CASE("bounds reject nonsensical parameters") {
  CHECK_THROWS_AS(deterministic_lower_bound(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(deterministic_lower_bound(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(deterministic_lower_bound(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(randomized_lower_bound(1, 1, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(randomized_lower_bound(1, 1, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(optimal_gamma(0, 1, 1), std::invalid_argument);
}
