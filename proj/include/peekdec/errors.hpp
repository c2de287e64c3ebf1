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

#ifndef PEEKDEC_ERRORS_HPP_
#define PEEKDEC_ERRORS_HPP_

#include <stdexcept>

namespace peekdec {

// Some ordered pair of states has no directed path, i.e. the graph has no
// finite diameter.  Decoding guarantees need ergodicity, so construction of
// a StateGraph fails with this.
class NotErgodicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A decoder (or anything else holding a windowed oracle view) asked for a
// reward beyond its declared lookahead budget.
class LatencyViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A reward that must be non-negative came out negative (offset too small).
class NegativeRewardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rewards are unbounded below (-inf present), so no finite shift can make
// them non-negative.
class UnboundedRewardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A path uses a transition that is not an edge of the state graph.
class EdgeViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The adaptive adversary was queried for a matrix column it has not yet
// committed to, or was driven out of protocol order.
class ProtocolViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model file is structurally broken: unknown states/tokens, missing rows,
// non-finite log-probabilities on allowed transitions, and the like.
class InvalidModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form bound was requested outside its precondition (e.g. latency
// below the effective diameter) in a context that cannot report "n/a".
class BoundInapplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace peekdec

#endif  // PEEKDEC_ERRORS_HPP_
