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

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "peekdec/errors.hpp"

namespace peekdec {
namespace {

constexpr int kUnreached = -1;

// BFS hop counts from `source` into dist (pre-sized, filled with kUnreached).
void bfs(const std::vector<std::vector<int>>& succ, int source,
         std::vector<int>& dist) {
  std::deque<int> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : succ[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

std::vector<std::vector<int>> all_pairs_distances(
    int num_states, const std::vector<std::vector<int>>& succ) {
  std::vector<std::vector<int>> dist(
      num_states, std::vector<int>(num_states, kUnreached));
  for (int s = 0; s < num_states; ++s) bfs(succ, s, dist[s]);
  for (int u = 0; u < num_states; ++u) {
    for (int v = 0; v < num_states; ++v) {
      if (dist[u][v] == kUnreached) {
        throw NotErgodicError("no path from state " + std::to_string(u) +
                              " to state " + std::to_string(v));
      }
    }
  }
  return dist;
}

}  // namespace

StateGraph::StateGraph(int num_states, std::vector<std::vector<int>> successors)
    : num_states_(num_states), successors_(std::move(successors)) {
  if (num_states_ < 1) {
    throw std::invalid_argument("state graph needs at least one state");
  }
  if (static_cast<int>(successors_.size()) != num_states_) {
    throw std::invalid_argument("successor list count != num_states");
  }
  for (int s = 0; s < num_states_; ++s) {
    auto& out = successors_[s];
    if (out.empty()) {
      throw std::invalid_argument("state " + std::to_string(s) +
                                  " has no outgoing edge");
    }
    for (int v : out) {
      if (v < 0 || v >= num_states_) {
        throw std::invalid_argument("edge target out of range: " +
                                    std::to_string(v));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  dist_ = all_pairs_distances(num_states_, successors_);
  diameter_ = 1;  // single-state convention
  for (int u = 0; u < num_states_; ++u) {
    for (int v = 0; v < num_states_; ++v) {
      if (u != v) diameter_ = std::max(diameter_, dist_[u][v]);
    }
  }
}

StateGraph StateGraph::fully_connected(int num_states) {
  std::vector<int> all(num_states);
  for (int s = 0; s < num_states; ++s) all[s] = s;
  return StateGraph(num_states,
                    std::vector<std::vector<int>>(num_states, all));
}

bool StateGraph::has_edge(int from, int to) const {
  const auto& out = successors_[from];
  return std::binary_search(out.begin(), out.end(), to);
}

StateGraph StateGraph::transposed() const {
  std::vector<std::vector<int>> rev(num_states_);
  for (int u = 0; u < num_states_; ++u) {
    for (int v : successors_[u]) rev[v].push_back(u);
  }
  return StateGraph(num_states_, std::move(rev));
}

int compute_diameter(int num_states,
                     const std::vector<std::vector<int>>& successors) {
  auto dist = all_pairs_distances(num_states, successors);
  int diameter = 1;
  for (int u = 0; u < num_states; ++u) {
    for (int v = 0; v < num_states; ++v) {
      if (u != v) diameter = std::max(diameter, dist[u][v]);
    }
  }
  return diameter;
}

}  // namespace peekdec
