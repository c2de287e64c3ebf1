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

#ifndef PEEKDEC_ADVERSARY_HPP_
#define PEEKDEC_ADVERSARY_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "peekdec/decode.hpp"
#include "peekdec/reward.hpp"
#include "peekdec/state_graph.hpp"

namespace peekdec {

// The equalizer constant of the adaptive lower-bound game: the positive root
// of n*a / (1 + (L-1)a) = (1 + n*a) / (L*a), i.e.
//   a = (n + L - 1 + sqrt((n+L-1)^2 + 4n)) / (2n).
// `order` is the effective order the game is played at (n for diameter-1
// graphs, delta+n-1 in general).
double adversary_constant_a(int latency, int order);

// Ratio floor the game enforces: min(r1, r2) with
//   r1 = 1 + n*a / (1 + (L-1)a)   (adversary's payoff when the decoder stays)
//   r2 = 1 + (1 + n*a) / (L*a)    (when it moves).
// The constant a makes the two branch penalties equal, so the min is what an
// optimal decoder concedes.
double adversary_game_floor(int latency, int order);

// Prism over a base polygon crossed with a (delta-1)-cube: vertices are
// (corner, face) pairs with corner in {0,1}^(delta-1) and face in
// {0..base_size-1}.  Edges: self-loops, single-coordinate corner flips, and
// face moves within a corner --- the base cycle's two neighbours, or every
// other face when strongly_connected_faces is set.  All edges are
// bidirectional, so the graph is ergodic, and with clique faces the diameter
// is exactly delta with the full distance spectrum 0..delta realized.
// base_size >= 2 keeps that exact-diameter property (base_size = 2 is the
// delta-cube); base_size = 1 degenerates to the (delta-1)-cube and is only
// meaningful for delta = 1, where it is the single looped vertex.
StateGraph build_prismatic_polytope(int delta, int base_size,
                                    bool strongly_connected_faces);

// Reward matrix with the n-consecutive-visits rule: committing y at time t
// pays matrix(t, y) when the whole order-n context already sits at y (dummy
// slots admitted), and 0 otherwise.  Columns can be revealed progressively;
// querying an unset column throws ProtocolViolationError --- a decoder whose
// latency window is honest never triggers it.
class MatrixRewardOracle final : public RewardOracle {
 public:
  MatrixRewardOracle(int num_states, int order, int horizon);

  void set_column(int time, std::vector<double> values);
  bool column_set(int time) const;

  int num_states() const { return num_states_; }
  int order() const override { return order_; }
  int horizon() const override { return horizon_; }
  double reward(int time, int state,
                std::span<const int> context) const override;

 private:
  int num_states_, order_, horizon_;
  std::vector<std::vector<double>> columns_;
  std::vector<bool> set_;
};

struct GameOutcome {
  double opt = 0.0;   // exact optimum of the fully revealed matrix
  double on = 0.0;    // what the decoder earned
  double ratio = 1.0; // opt/on, +inf when on == 0 and opt > 0
  double floor = 1.0; // min(r1, r2) the game guarantees
  std::vector<int> online_labels;
  std::vector<int> optimal_labels;
  std::int64_t audit_violations = 0;
  bool commitment_consistent = true;  // reveals never changed a shown value
};

// Plays the adaptive reward-revelation game against the policy on the
// triangular prism polytope of diameter `delta` (3 * 2^(delta-1) states),
// horizon L+3.  Columns: zeros at t=1, ones at t=2, the equalizer constant
// a at t in 3..L+1; the column at t=L+2 is revealed only after the decoder's
// first commitment (0 at the committed vertex, (n_eff + d - 1) * a at
// distance-d vertices), and the final column after the second commitment
// (all zeros if it stayed, else 0 at both committed vertices and a at a
// third one).  Every reveal lands outside the decoder's visibility window at
// reveal time, so shown values never change; the audit log double-checks
// that and the outcome reports opt/on against the floor.
GameOutcome play_deterministic_game(OnlinePolicy& policy, int latency,
                                    int order, int delta);

struct RandomizedInstance {
  StateGraph graph;
  std::unique_ptr<MatrixRewardOracle> oracle;
  double opt = 0.0;      // closed form: L + n, achieved by parking at secret
  int secret_state = 0;
  int num_states = 0;    // u = 2^(delta-1) * ceil(1/eps)
};

// The oblivious instance behind the randomized floor: u states arranged as a
// strongly-connected-faces polytope, horizon L+2, zeros at t=1, ones
// everywhere in 2..L+1, and a final column that pays n at one secret state
// drawn uniformly by `seed`.  Any decoder's expected total is at most
// L + n/u (= L + eps*n at delta=1), while the optimum L + n parks at the
// secret from the start.
RandomizedInstance randomized_adversary_instance(double eps, int delta,
                                                 int order, int latency,
                                                 std::uint64_t seed);

}  // namespace peekdec

#endif  // PEEKDEC_ADVERSARY_HPP_
