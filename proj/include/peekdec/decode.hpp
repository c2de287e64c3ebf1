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

#ifndef PEEKDEC_DECODE_HPP_
#define PEEKDEC_DECODE_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "peekdec/audit.hpp"
#include "peekdec/reward.hpp"
#include "peekdec/state_graph.hpp"

namespace peekdec {

// Shared settings for the lookahead decoders.
struct PeekConfig {
  int latency = 0;              // L: how far past "now" the oracle is visible
  std::optional<double> gamma;  // discount; empty = proof-optimal default
  bool padding = false;         // embed in zero-reward margins of L+1 steps
};

// One level per lookahead depth; cells are context codes (the last n states
// of the partial path, dummy-aware).  scores[l][c] is the best discounted
// mass of any partial path ending in configuration c after l+1 steps, or
// -inf when unreachable; parent[l][c] is the level-(l-1) cell it came from.
// With non-negative rewards every reachable score is >= 0.
struct TrellisTable {
  std::int64_t codes = 0;
  std::vector<std::vector<double>> scores;
  std::vector<std::vector<std::int64_t>> parent;
};

// Best path found by one lookahead DP sweep.
struct PlanResult {
  std::vector<int> path;  // states for times now..now+steps
  double score = 0.0;     // sum of gamma^j * reward along the path
};

// Maximizes sum_{j=0..steps} gamma^j * R(now+j, y_j | rolling context) over
// all graph-valid continuations of `history` (the last n committed states,
// dummy-padded at the sequence start).  One DP level per step over context
// cells, O(steps * |K|^(n+1)) with the successor scan written out.  Ties are
// broken canonically and deterministically: cells and successors are scanned
// in ascending code order and only strict improvements replace an incumbent,
// so among equal-score plans the one ending in the smallest final cell (then
// coming from the smallest parents) wins.  Pass `table` to capture the
// trellis for inspection.
PlanResult plan_best_path(const RewardOracle& oracle, const StateGraph& graph,
                          int now, std::span<const int> history, int steps,
                          double gamma, TrellisTable* table = nullptr);

// Everything a decoding run leaves behind.
struct DecodeTrace {
  DecodePath path;
  // Lookahead path selected at each emitted step (diagnostics; for the
  // one-step decoders this is just the committed state).
  std::vector<std::vector<int>> per_step_choices;
  // Times at which a fresh DP sweep ran (1-based, real window coordinates).
  std::vector<int> recompute_times;
  double gamma_used = std::numeric_limits<double>::quiet_NaN();
  std::int64_t audit_queries = 0;
  std::int64_t audit_violations = 0;  // 0 for every run that completes
  std::vector<AuditRecord> audit_log;  // only with RunOptions::keep_log
};

// A decoder driven one commitment at a time.  The driver owns the committed
// history and the audit window; choose() may query the oracle it was handed
// in begin() for times up to `time + latency` only.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual std::string name() const = 0;
  virtual void begin(const RewardOracle& oracle, const StateGraph& graph) = 0;
  // Returns the state committed at `time`; history holds the previous
  // order() states (dummy-padded).
  virtual int choose(int time, std::span<const int> history) = 0;
  // Introspection for traces: the plan backing the last choose() call, and
  // whether that call ran a fresh DP sweep.
  virtual const std::vector<int>& last_plan() const = 0;
  virtual bool replanned() const = 0;
};

struct RunOptions {
  int latency = 0;
  bool padding = false;  // margin latency+1 on both sides when set
  bool keep_log = false;
  // Called right after each commitment; adaptive adversaries hook in here.
  std::function<void(int time, int state)> on_commit;
};

// Runs a policy over the oracle start to finish and assembles the trace.
// With padding on, the run happens on the embedded instance and the returned
// trace covers the real window only (per-step rewards are the ones actually
// earned, so boundary steps may see margin states in their contexts).
DecodeTrace run_online(OnlinePolicy& policy, const RewardOracle& oracle,
                       const StateGraph& graph, const RunOptions& options);

// --- The decoders ---------------------------------------------------------

// Commits the first state of the best discounted L-step lookahead plan, then
// rolls the window forward one step and repeats.
class PeekSearchPolicy : public OnlinePolicy {
 public:
  PeekSearchPolicy(PeekConfig config);
  std::string name() const override { return "peek_search"; }
  void begin(const RewardOracle& oracle, const StateGraph& graph) override;
  int choose(int time, std::span<const int> history) override;
  const std::vector<int>& last_plan() const override { return plan_; }
  bool replanned() const override { return true; }
  double gamma_used() const { return gamma_; }

 private:
  PeekConfig config_;
  const RewardOracle* oracle_ = nullptr;
  const StateGraph* graph_ = nullptr;
  double gamma_ = 1.0;
  std::vector<int> plan_;
};

// Lookahead zero: the myopic argmax of the immediate reward.
class GreedyPolicy : public OnlinePolicy {
 public:
  std::string name() const override { return "greedy"; }
  void begin(const RewardOracle& oracle, const StateGraph& graph) override;
  int choose(int time, std::span<const int> history) override;
  const std::vector<int>& last_plan() const override { return plan_; }
  bool replanned() const override { return true; }

 private:
  const RewardOracle* oracle_ = nullptr;
  const StateGraph* graph_ = nullptr;
  std::vector<int> plan_;
};

// Draws a reset phase uniformly from {1..L+1} once per run, then commits
// whole undiscounted L+1-step segments at times l, l+(L+1), l+2(L+1), ...
// The steps before the first reset follow the undiscounted best path of
// length l-1 planned at time 1.
class RandomizedPeekPolicy : public OnlinePolicy {
 public:
  RandomizedPeekPolicy(int latency, std::uint64_t seed);
  std::string name() const override { return "randomized_peek_search"; }
  void begin(const RewardOracle& oracle, const StateGraph& graph) override;
  int choose(int time, std::span<const int> history) override;
  const std::vector<int>& last_plan() const override { return plan_; }
  bool replanned() const override { return replanned_; }
  int reset_phase() const { return phase_; }  // the drawn l

 private:
  int latency_;
  std::uint64_t seed_;
  const RewardOracle* oracle_ = nullptr;
  const StateGraph* graph_ = nullptr;
  int phase_ = 1;
  int next_reset_ = 1;
  std::size_t cursor_ = 0;
  bool replanned_ = false;
  std::vector<int> plan_;
};

// Peek Reset: plans a whole phase at once.  At phase start s it scores
// x_t = max over path-valid (context, y) of R(t, y | context) for the
// candidate cut points t in {s + floor(L/2) + 1, ..., s + L}, picks the
// smallest minimizer T*, commits the undiscounted best path over
// [s, T*-1], and restarts at T*.  The final phase truncates at the horizon.
class PeekResetPolicy : public OnlinePolicy {
 public:
  explicit PeekResetPolicy(int latency);
  std::string name() const override { return "peek_reset"; }
  void begin(const RewardOracle& oracle, const StateGraph& graph) override;
  int choose(int time, std::span<const int> history) override;
  const std::vector<int>& last_plan() const override { return plan_; }
  bool replanned() const override { return replanned_; }

 private:
  int latency_;
  const RewardOracle* oracle_ = nullptr;
  const StateGraph* graph_ = nullptr;
  std::size_t cursor_ = 0;
  bool replanned_ = false;
  std::vector<int> plan_;
};

// --- Convenience entry points ---------------------------------------------

// One Peek Search step from an explicit position: the best (L+1)-state
// lookahead plan and the state it commits.
struct StepResult {
  int next_state = 0;
  std::vector<int> lookahead;
  double score = 0.0;
};
StepResult peek_search_step(const RewardOracle& oracle,
                            const StateGraph& graph, const PeekConfig& config,
                            int now, std::span<const int> history);

DecodeTrace peek_search_decode(const RewardOracle& oracle,
                               const StateGraph& graph,
                               const PeekConfig& config);

DecodeTrace greedy_decode(const RewardOracle& oracle, const StateGraph& graph);

DecodeTrace randomized_peek_search_decode(const RewardOracle& oracle,
                                          const StateGraph& graph, int latency,
                                          std::uint64_t seed,
                                          bool padding = false);

DecodeTrace peek_reset_decode(const RewardOracle& oracle,
                              const StateGraph& graph, int latency,
                              bool padding = false);

// Exact offline optimum via a backward suffix DP over context cells with a
// forward smallest-state traceback, which yields the lexicographically
// smallest optimal path.  Declares latency horizon-1 for audit purposes.
DecodePath viterbi_decode(const RewardOracle& oracle, const StateGraph& graph);

// The proof-optimal discount ((delta+n-1)/(L+1))^(1/(L-delta-n+2)) when the
// budget clears the effective diameter, otherwise 0.5 as a pragmatic
// fallback (the guarantee does not apply there and the harness reports the
// bound as n/a).
double default_gamma(int latency, int order, int delta);

}  // namespace peekdec

#endif  // PEEKDEC_DECODE_HPP_
