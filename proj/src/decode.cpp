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

#include "peekdec/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "peekdec/bounds.hpp"
#include "peekdec/errors.hpp"
#include "peekdec/rng.hpp"

namespace peekdec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

PlanResult plan_best_path(const RewardOracle& oracle, const StateGraph& graph,
                          int now, std::span<const int> history, int steps,
                          double gamma, TrellisTable* table) {
  const int n = oracle.order();
  const int num_states = graph.num_states();
  if (static_cast<int>(history.size()) != n) {
    throw std::invalid_argument("history length must equal the model order");
  }
  if (steps < 0 || now < 1 || now + steps > oracle.horizon()) {
    throw std::invalid_argument("plan window outside the horizon");
  }
  const std::int64_t codes = num_context_codes(num_states, n);

  // scores[l][c]: best discounted mass over partial paths for times
  // now..now+l whose last n states pack to code c; parent[l][c] is the
  // level-(l-1) cell it extends.  Cells and successors are scanned in
  // ascending order with strict improvement only, so the incumbent at every
  // cell is the lexicographically smallest among its argmax paths.
  std::vector<std::vector<double>> scores(
      steps + 1, std::vector<double>(codes, kNegInf));
  std::vector<std::vector<std::int64_t>> parent(
      steps + 1, std::vector<std::int64_t>(codes, -1));

  const std::int64_t history_code = encode_context(history, num_states);
  const int current = history[n - 1];
  std::vector<int> ctx(history.begin(), history.end());

  auto first_moves =
      [&](int from) -> std::pair<const std::vector<int>*, std::vector<int>> {
    if (from == kDummyState) {
      std::vector<int> all(num_states);
      for (int s = 0; s < num_states; ++s) all[s] = s;
      return {nullptr, std::move(all)};
    }
    return {&graph.successors(from), {}};
  };
  auto [succ_ptr, all_states] = first_moves(current);
  const std::vector<int>& level0_moves = succ_ptr ? *succ_ptr : all_states;

  for (int y : level0_moves) {
    std::int64_t cell = shift_context_code(history_code, y, num_states, n);
    double value = oracle.reward(now, y, history);
    if (value > scores[0][cell]) scores[0][cell] = value;
  }

  double discount = 1.0;
  std::vector<int> cell_ctx(n);
  for (int level = 1; level <= steps; ++level) {
    discount *= gamma;
    auto& prev = scores[level - 1];
    auto& cur = scores[level];
    auto& par = parent[level];
    for (std::int64_t code = 0; code < codes; ++code) {
      if (prev[code] == kNegInf) continue;
      decode_context(code, num_states, n, cell_ctx);
      int from = cell_ctx[n - 1];  // always real: level >= 1 appended it
      for (int y : graph.successors(from)) {
        std::int64_t next = shift_context_code(code, y, num_states, n);
        double candidate =
            prev[code] +
            discount * oracle.reward(now + level, y,
                                     std::span<const int>(cell_ctx));
        if (candidate > cur[next]) {
          cur[next] = candidate;
          par[next] = code;
        }
      }
    }
  }

  std::int64_t best_cell = -1;
  double best_score = kNegInf;
  for (std::int64_t code = 0; code < codes; ++code) {
    if (scores[steps][code] > best_score) {
      best_score = scores[steps][code];
      best_cell = code;
    }
  }
  if (best_cell < 0) {
    throw std::logic_error("lookahead trellis has no reachable cell");
  }

  PlanResult result;
  result.score = best_score;
  result.path.assign(steps + 1, 0);
  std::int64_t cell = best_cell;
  for (int level = steps; level >= 0; --level) {
    decode_context(cell, num_states, n, cell_ctx);
    result.path[level] = cell_ctx[n - 1];
    cell = level > 0 ? parent[level][cell] : -1;
  }

  if (table) {
    table->codes = codes;
    table->scores = std::move(scores);
    table->parent = std::move(parent);
  }
  return result;
}

double default_gamma(int latency, int order, int delta) {
  // Zero lookahead never clears the effective diameter; skip straight to the
  // fallback instead of asking the bound for an out-of-domain budget.
  if (latency < 1) return 0.5;
  return optimal_gamma(latency, order, delta).value_or(0.5);
}

// --- driver ----------------------------------------------------------------

DecodeTrace run_online(OnlinePolicy& policy, const RewardOracle& oracle,
                       const StateGraph& graph, const RunOptions& options) {
  const int margin = options.padding ? options.latency + 1 : 0;
  std::optional<PaddedOracle> padded;
  const RewardOracle* active = &oracle;
  if (margin > 0) {
    padded.emplace(oracle, margin);
    active = &*padded;
  }
  AuditedOracle audited(*active, options.latency, options.keep_log);

  policy.begin(audited, graph);

  const int horizon = active->horizon();
  std::vector<int> labels;
  labels.reserve(horizon);
  std::vector<std::vector<int>> choices;
  std::vector<int> recomputes;
  std::vector<int> history = initial_context(oracle.order());

  for (int t = 1; t <= horizon; ++t) {
    audited.set_position(t);
    int y = policy.choose(t, history);
    if (y < 0 || y >= graph.num_states() ||
        (!labels.empty() && !graph.has_edge(labels.back(), y))) {
      throw std::logic_error(policy.name() + " committed an invalid move at " +
                             std::to_string(t));
    }
    labels.push_back(y);
    choices.push_back(policy.last_plan());
    if (policy.replanned()) recomputes.push_back(t);
    if (options.on_commit) options.on_commit(t, y);
    history.erase(history.begin());
    history.push_back(y);
  }

  DecodeTrace trace;
  if (margin > 0) {
    // Report the real window only.  Margin masking makes the base evaluation
    // of the real-window labels equal to what the run actually earned there.
    const int real = oracle.horizon();
    std::vector<int> window(labels.begin() + margin,
                            labels.begin() + margin + real);
    trace.path = evaluate_path(window, oracle, graph);
    trace.per_step_choices.assign(choices.begin() + margin,
                                  choices.begin() + margin + real);
    for (int t : recomputes) {
      if (t > margin && t <= margin + real) {
        trace.recompute_times.push_back(t - margin);
      }
    }
  } else {
    trace.path = evaluate_path(labels, oracle, graph);
    trace.per_step_choices = std::move(choices);
    trace.recompute_times = std::move(recomputes);
  }
  trace.audit_queries = audited.query_count();
  trace.audit_violations = audited.violation_count();
  if (options.keep_log) trace.audit_log = audited.log();
  return trace;
}

// --- peek search -----------------------------------------------------------

PeekSearchPolicy::PeekSearchPolicy(PeekConfig config) : config_(config) {
  if (config.latency < 0) {
    throw std::invalid_argument("latency must be >= 0");
  }
}

void PeekSearchPolicy::begin(const RewardOracle& oracle,
                             const StateGraph& graph) {
  oracle_ = &oracle;
  graph_ = &graph;
  gamma_ = config_.gamma ? *config_.gamma
                         : default_gamma(config_.latency, oracle.order(),
                                         graph.diameter());
}

int PeekSearchPolicy::choose(int time, std::span<const int> history) {
  int steps = std::min(config_.latency, oracle_->horizon() - time);
  plan_ = plan_best_path(*oracle_, *graph_, time, history, steps, gamma_).path;
  return plan_[0];
}

// --- greedy ----------------------------------------------------------------

void GreedyPolicy::begin(const RewardOracle& oracle, const StateGraph& graph) {
  oracle_ = &oracle;
  graph_ = &graph;
}

int GreedyPolicy::choose(int time, std::span<const int> history) {
  plan_ = plan_best_path(*oracle_, *graph_, time, history, 0, 1.0).path;
  return plan_[0];
}

// --- randomized peek search -------------------------------------------------

RandomizedPeekPolicy::RandomizedPeekPolicy(int latency, std::uint64_t seed)
    : latency_(latency), seed_(seed) {
  if (latency < 0) throw std::invalid_argument("latency must be >= 0");
}

void RandomizedPeekPolicy::begin(const RewardOracle& oracle,
                                 const StateGraph& graph) {
  oracle_ = &oracle;
  graph_ = &graph;
  // One uniform draw from {1..L+1} decides the whole reset grid.
  phase_ = 1 + static_cast<int>(Rng(seed_).next_below(latency_ + 1));
  next_reset_ = phase_;
  cursor_ = 0;
  plan_.clear();
}

int RandomizedPeekPolicy::choose(int time, std::span<const int> history) {
  replanned_ = false;
  if (time == 1 && phase_ > 1) {
    // Warm-up segment [1, l-1], undiscounted.
    int steps = std::min(phase_ - 2, oracle_->horizon() - 1);
    plan_ = plan_best_path(*oracle_, *graph_, 1, history, steps, 1.0).path;
    cursor_ = 0;
    replanned_ = true;
  } else if (time == next_reset_) {
    int steps = std::min(latency_, oracle_->horizon() - time);
    plan_ = plan_best_path(*oracle_, *graph_, time, history, steps, 1.0).path;
    cursor_ = 0;
    next_reset_ += latency_ + 1;
    replanned_ = true;
  }
  return plan_[cursor_++];
}

// --- peek reset --------------------------------------------------------------

PeekResetPolicy::PeekResetPolicy(int latency) : latency_(latency) {
  if (latency < 1) throw std::invalid_argument("peek reset needs latency >= 1");
}

void PeekResetPolicy::begin(const RewardOracle& oracle,
                            const StateGraph& graph) {
  oracle_ = &oracle;
  graph_ = &graph;
  cursor_ = 0;
  plan_.clear();
}

int PeekResetPolicy::choose(int time, std::span<const int> history) {
  replanned_ = false;
  if (cursor_ == plan_.size()) {
    // Phase start.  Pick the cheapest cut point in the second half of the
    // window: x_t is the best single-step reward available at t, and the
    // phase runs up to (not including) the smallest minimizer.
    const int s = time;
    const int horizon = oracle_->horizon();
    int lo = s + latency_ / 2 + 1;
    int end;  // one past the phase: the next phase starts here
    if (lo > horizon) {
      end = horizon + 1;  // final phase, truncated at the horizon
    } else {
      int hi = std::min(s + latency_, horizon);
      int best_t = -1;
      double best_x = std::numeric_limits<double>::infinity();
      for (int t = lo; t <= hi; ++t) {
        double x = kNegInf;
        for_each_context_state(*graph_, oracle_->order(), t,
                               [&](std::span<const int> ctx, int y) {
                                 double r = oracle_->reward(t, y, ctx);
                                 if (r > x) x = r;
                               });
        if (x < best_x) {
          best_x = x;
          best_t = t;
        }
      }
      end = best_t;
    }
    plan_ = plan_best_path(*oracle_, *graph_, s, history, end - 1 - s, 1.0)
                .path;
    cursor_ = 0;
    replanned_ = true;
  }
  return plan_[cursor_++];
}

// --- convenience wrappers ----------------------------------------------------

StepResult peek_search_step(const RewardOracle& oracle,
                            const StateGraph& graph, const PeekConfig& config,
                            int now, std::span<const int> history) {
  double gamma = config.gamma ? *config.gamma
                              : default_gamma(config.latency, oracle.order(),
                                              graph.diameter());
  int steps = std::min(config.latency, oracle.horizon() - now);
  PlanResult plan = plan_best_path(oracle, graph, now, history, steps, gamma);
  StepResult out;
  out.next_state = plan.path[0];
  out.lookahead = std::move(plan.path);
  out.score = plan.score;
  return out;
}

DecodeTrace peek_search_decode(const RewardOracle& oracle,
                               const StateGraph& graph,
                               const PeekConfig& config) {
  PeekSearchPolicy policy(config);
  RunOptions options;
  options.latency = config.latency;
  options.padding = config.padding;
  DecodeTrace trace = run_online(policy, oracle, graph, options);
  trace.gamma_used = policy.gamma_used();
  return trace;
}

DecodeTrace greedy_decode(const RewardOracle& oracle,
                          const StateGraph& graph) {
  GreedyPolicy policy;
  RunOptions options;  // latency 0, no padding
  DecodeTrace trace = run_online(policy, oracle, graph, options);
  trace.gamma_used = 1.0;
  return trace;
}

DecodeTrace randomized_peek_search_decode(const RewardOracle& oracle,
                                          const StateGraph& graph, int latency,
                                          std::uint64_t seed, bool padding) {
  RandomizedPeekPolicy policy(latency, seed);
  RunOptions options;
  options.latency = latency;
  options.padding = padding;
  DecodeTrace trace = run_online(policy, oracle, graph, options);
  trace.gamma_used = 1.0;
  return trace;
}

DecodeTrace peek_reset_decode(const RewardOracle& oracle,
                              const StateGraph& graph, int latency,
                              bool padding) {
  PeekResetPolicy policy(latency);
  RunOptions options;
  options.latency = latency;
  options.padding = padding;
  DecodeTrace trace = run_online(policy, oracle, graph, options);
  trace.gamma_used = 1.0;
  return trace;
}

// --- exact offline ------------------------------------------------------------

DecodePath viterbi_decode(const RewardOracle& oracle, const StateGraph& graph) {
  const int n = oracle.order();
  const int num_states = graph.num_states();
  const int horizon = oracle.horizon();
  const std::int64_t codes = num_context_codes(num_states, n);

  // Offline: the whole sequence is visible, declared as latency T-1.
  AuditedOracle audited(oracle, horizon - 1);
  audited.set_position(1);

  // suffix[t][c]: best achievable reward over times t..T entering with
  // context code c.  Row T+1 is the all-zero base case.
  std::vector<std::vector<double>> suffix(
      horizon + 2, std::vector<double>(codes, kNegInf));
  std::fill(suffix[horizon + 1].begin(), suffix[horizon + 1].end(), 0.0);

  std::vector<int> scratch(n);
  for (int t = horizon; t >= 1; --t) {
    for_each_context(graph, n, t, [&](std::span<const int> ctx) {
      std::int64_t code = encode_context(ctx, num_states);
      int last = ctx[n - 1];
      double best = kNegInf;
      auto consider = [&](int y) {
        std::int64_t next = shift_context_code(code, y, num_states, n);
        double candidate = audited.reward(t, y, ctx) + suffix[t + 1][next];
        if (candidate > best) best = candidate;
      };
      if (last == kDummyState) {
        for (int y = 0; y < num_states; ++y) consider(y);
      } else {
        for (int y : graph.successors(last)) consider(y);
      }
      suffix[t][code] = best;
    });
  }

  // Forward pass: at each time take the smallest state achieving the best
  // reward-to-go, which yields the lexicographically smallest optimal path.
  DecodePath out;
  out.labels.reserve(horizon);
  out.step_rewards.reserve(horizon);
  std::vector<int> ctx = initial_context(n);
  std::int64_t code = encode_context(ctx, num_states);
  for (int t = 1; t <= horizon; ++t) {
    int last = ctx[n - 1];
    int best_y = -1;
    double best = kNegInf;
    double best_step = 0.0;
    auto consider = [&](int y) {
      std::int64_t next = shift_context_code(code, y, num_states, n);
      double step = audited.reward(t, y, ctx);
      double candidate = step + suffix[t + 1][next];
      if (candidate > best) {
        best = candidate;
        best_y = y;
        best_step = step;
      }
    };
    if (last == kDummyState) {
      for (int y = 0; y < num_states; ++y) consider(y);
    } else {
      for (int y : graph.successors(last)) consider(y);
    }
    out.labels.push_back(best_y);
    out.step_rewards.push_back(best_step);
    out.total += best_step;
    code = shift_context_code(code, best_y, num_states, n);
    ctx.erase(ctx.begin());
    ctx.push_back(best_y);
  }
  return out;
}

}  // namespace peekdec
