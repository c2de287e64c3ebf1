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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "peekdec/errors.hpp"
#include "peekdec/rng.hpp"

namespace peekdec {

double adversary_constant_a(int latency, int order) {
  if (latency < 1 || order < 1) {
    throw std::invalid_argument("game needs latency >= 1 and order >= 1");
  }
  const double L = latency;
  const double n = order;
  const double s = n + L - 1;
  return (s + std::sqrt(s * s + 4.0 * n)) / (2.0 * n);
}

double adversary_game_floor(int latency, int order) {
  const double a = adversary_constant_a(latency, order);
  const double L = latency;
  const double n = order;
  const double stay = 1.0 + n * a / (1.0 + (L - 1.0) * a);
  const double move = 1.0 + (1.0 + n * a) / (L * a);
  return std::min(stay, move);  // equal analytically; min guards rounding
}

StateGraph build_prismatic_polytope(int delta, int base_size,
                                    bool strongly_connected_faces) {
  if (delta < 1) throw std::invalid_argument("diameter must be >= 1");
  if (base_size < 1) throw std::invalid_argument("base needs >= 1 vertices");
  const int corners = 1 << (delta - 1);
  const int num_states = corners * base_size;

  std::vector<std::vector<int>> succ(num_states);
  for (int corner = 0; corner < corners; ++corner) {
    for (int face = 0; face < base_size; ++face) {
      int v = corner * base_size + face;
      auto& out = succ[v];
      out.push_back(v);  // staying put is always legal
      for (int bit = 0; bit < delta - 1; ++bit) {
        out.push_back((corner ^ (1 << bit)) * base_size + face);
      }
      if (strongly_connected_faces) {
        for (int other = 0; other < base_size; ++other) {
          if (other != face) out.push_back(corner * base_size + other);
        }
      } else if (base_size > 1) {
        out.push_back(corner * base_size + (face + 1) % base_size);
        out.push_back(corner * base_size + (face + base_size - 1) % base_size);
      }
    }
  }
  StateGraph graph(num_states, std::move(succ));

  // The construction is a Cartesian product of (delta-1) two-cliques and the
  // base graph, so the diameter is additive and fully predictable; anything
  // else means the wiring above is wrong.
  int face_diam =
      base_size == 1 ? 0 : (strongly_connected_faces ? 1 : base_size / 2);
  int expected = num_states == 1 ? 1 : (delta - 1) + face_diam;
  if (graph.diameter() != expected) {
    throw std::logic_error("polytope diameter came out as " +
                           std::to_string(graph.diameter()) + ", expected " +
                           std::to_string(expected));
  }
  return graph;
}

MatrixRewardOracle::MatrixRewardOracle(int num_states, int order, int horizon)
    : num_states_(num_states),
      order_(order),
      horizon_(horizon),
      columns_(horizon + 1),
      set_(horizon + 1, false) {
  if (num_states < 1 || order < 1 || horizon < 1) {
    throw std::invalid_argument("matrix oracle needs positive dimensions");
  }
}

void MatrixRewardOracle::set_column(int time, std::vector<double> values) {
  if (time < 1 || time > horizon_) {
    throw std::invalid_argument("column time out of range");
  }
  if (static_cast<int>(values.size()) != num_states_) {
    throw std::invalid_argument("column size != num_states");
  }
  columns_[time] = std::move(values);
  set_[time] = true;
}

bool MatrixRewardOracle::column_set(int time) const { return set_[time]; }

double MatrixRewardOracle::reward(int time, int state,
                                  std::span<const int> context) const {
  if (time < 1 || time > horizon_ || !set_[time]) {
    throw ProtocolViolationError("column " + std::to_string(time) +
                                 " queried before it was committed");
  }
  // n-consecutive-visits rule: full value only when every real context slot
  // already sits at `state` (dummy slots pass).
  for (int s : context) {
    if (s != kDummyState && s != state) return 0.0;
  }
  return columns_[time][state];
}

namespace {

// Reveal bookkeeping for the adaptive game.
struct GameState {
  MatrixRewardOracle* oracle;
  const StateGraph* graph;
  int order;       // model order n
  int horizon;     // L + 3
  double a;
  int first = -1;  // the decoder's first two commitments
  int second = -1;

  void on_commit(int time, int state) {
    if (time == 1) {
      first = state;
      // Penalty column: free at the committed vertex, (n+d-1)a at
      // distance-d vertices, so distance and order losses cancel out for
      // anyone chasing the big entries.
      std::vector<double> column(graph->num_states());
      for (int v = 0; v < graph->num_states(); ++v) {
        int d = graph->distance(first, v);
        column[v] = d == 0 ? 0.0 : (order + d - 1) * a;
      }
      oracle->set_column(horizon - 1, column);
    } else if (time == 2) {
      second = state;
      std::vector<double> column(graph->num_states(), 0.0);
      if (second != first) {
        // The decoder walked away: dangle one more reward at the smallest
        // neighbour of the abandoned vertex that neither commitment holds.
        for (int w : graph->successors(first)) {
          if (w != first && w != second) {
            column[w] = a;
            break;
          }
        }
      }
      oracle->set_column(horizon, column);
    }
  }
};

}  // namespace

GameOutcome play_deterministic_game(OnlinePolicy& policy, int latency,
                                    int order, int delta) {
  if (latency < 1 || order < 1 || delta < 1) {
    throw std::invalid_argument("game needs positive latency/order/diameter");
  }
  StateGraph graph = build_prismatic_polytope(delta, 3, false);
  const int horizon = latency + 3;
  const int effective = delta + order - 1;
  const double a = adversary_constant_a(latency, effective);

  MatrixRewardOracle oracle(graph.num_states(), order, horizon);
  oracle.set_column(1, std::vector<double>(graph.num_states(), 0.0));
  oracle.set_column(2, std::vector<double>(graph.num_states(), 1.0));
  for (int t = 3; t <= latency + 1; ++t) {
    oracle.set_column(t, std::vector<double>(graph.num_states(), a));
  }

  GameState game{&oracle, &graph, order, horizon, a};
  RunOptions options;
  options.latency = latency;
  options.keep_log = true;
  options.on_commit = [&game](int time, int state) {
    game.on_commit(time, state);
  };
  DecodeTrace trace = run_online(policy, oracle, graph, options);

  GameOutcome outcome;
  outcome.on = trace.path.total;
  outcome.online_labels = trace.path.labels;
  outcome.audit_violations = trace.audit_violations;
  outcome.commitment_consistent = peekdec::commitment_consistent(trace.audit_log);
  DecodePath best = viterbi_decode(oracle, graph);
  outcome.opt = best.total;
  outcome.optimal_labels = std::move(best.labels);
  outcome.floor = adversary_game_floor(latency, effective);
  outcome.ratio = outcome.on > 0.0
                      ? outcome.opt / outcome.on
                      : std::numeric_limits<double>::infinity();
  return outcome;
}

RandomizedInstance randomized_adversary_instance(double eps, int delta,
                                                 int order, int latency,
                                                 std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("eps must lie in (0, 1]");
  }
  if (delta < 1 || order < 1 || latency < 1) {
    throw std::invalid_argument("instance needs positive parameters");
  }
  const int base = static_cast<int>(std::ceil(1.0 / eps - 1e-9));
  RandomizedInstance out{build_prismatic_polytope(delta, base, true), nullptr,
                         0.0, 0, 0};
  out.num_states = out.graph.num_states();
  out.secret_state = static_cast<int>(Rng(seed).next_below(out.num_states));

  const int horizon = latency + 2;
  out.oracle =
      std::make_unique<MatrixRewardOracle>(out.num_states, order, horizon);
  out.oracle->set_column(1, std::vector<double>(out.num_states, 0.0));
  for (int t = 2; t <= latency + 1; ++t) {
    out.oracle->set_column(t, std::vector<double>(out.num_states, 1.0));
  }
  std::vector<double> last(out.num_states, 0.0);
  last[out.secret_state] = order;
  out.oracle->set_column(horizon, std::move(last));

  // Sitting on the secret from the start collects every 1 plus the final n.
  out.opt = latency + order;
  return out;
}

}  // namespace peekdec
