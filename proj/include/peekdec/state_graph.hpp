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

#ifndef PEEKDEC_STATE_GRAPH_HPP_
#define PEEKDEC_STATE_GRAPH_HPP_

#include <vector>

namespace peekdec {

// Directed transition structure over states 0..K-1.  Construction validates
// ergodicity (every ordered pair connected by a directed path) and that every
// state has at least one outgoing edge, then caches all-pairs BFS distances.
// Impossible transitions are always encoded structurally, never as -inf
// rewards, so decoders can trust successors() completely.
class StateGraph {
 public:
  // successors[s] lists the states reachable from s in one step.  Lists are
  // sorted and deduplicated on construction.  Throws std::invalid_argument on
  // malformed input (empty successor list, out-of-range index) and
  // NotErgodicError when some pair has no connecting path.
  StateGraph(int num_states, std::vector<std::vector<int>> successors);

  // Complete digraph on num_states vertices, self-loops included.
  static StateGraph fully_connected(int num_states);

  int num_states() const { return num_states_; }
  const std::vector<int>& successors(int state) const {
    return successors_[state];
  }
  bool has_edge(int from, int to) const;

  // Length of the shortest directed path; 0 on the diagonal.
  int distance(int from, int to) const { return dist_[from][to]; }

  // Max over distinct ordered pairs, by convention 1 for a single-state
  // graph (the degenerate "move anywhere in one step" reading keeps the
  // bound formulas meaningful there).
  int diameter() const { return diameter_; }

  // Same vertices, every edge reversed.  The reverse diameter can differ.
  StateGraph transposed() const;

 private:
  int num_states_;
  std::vector<std::vector<int>> successors_;
  std::vector<std::vector<int>> dist_;  // BFS hop counts, all pairs
  int diameter_;
};

// BFS diameter of a raw adjacency structure, without building a StateGraph.
// Throws NotErgodicError when some ordered pair is unreachable.  This is the
// routine StateGraph runs at construction; it is exposed separately so
// candidate adjacencies can be screened before committing to a graph.
int compute_diameter(int num_states,
                     const std::vector<std::vector<int>>& successors);

inline int compute_diameter(const StateGraph& graph) {
  return graph.diameter();
}

}  // namespace peekdec

#endif  // PEEKDEC_STATE_GRAPH_HPP_
