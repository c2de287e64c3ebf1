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

#ifndef PEEKDEC_HMM_HPP_
#define PEEKDEC_HMM_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "peekdec/reward.hpp"
#include "peekdec/state_graph.hpp"

namespace peekdec {

// Order-n hidden Markov model over named states and a token vocabulary.
// Transition rows are keyed by the packed context code (dummy slots allowed,
// serialized as "*").  Rows may be omitted for dummy-bearing contexts; the
// scorer then falls back to a uniform choice over the allowed moves.  Rows
// for fully real contexts are mandatory for every graph edge.
struct HmmModel {
  std::vector<std::string> state_names;
  std::vector<std::string> vocabulary;
  int order = 1;
  StateGraph graph{1, {{0}}};
  // context code -> per-state log P(state | context); entries only for
  // states the graph allows after that context.
  std::map<std::int64_t, std::vector<double>> transition_logprobs;
  // [state][token] -> log P(token | state)
  std::vector<std::vector<double>> emission_logprobs;

  int num_states() const { return static_cast<int>(state_names.size()); }
  double transition_logprob(std::span<const int> context, int state) const;
};

// Serialization to the documented JSON layout (states, order, edges,
// transition_logprobs, emission_logprobs, vocabulary).  Keys use state
// names, contexts join names with commas and write dummies as "*".  Absent
// "edges" means fully connected.  load throws InvalidModelError on unknown
// names, missing mandatory rows, or non-finite log-probs on allowed moves.
std::string save_model_json(const HmmModel& model);
HmmModel load_model_json(const std::string& text);
HmmModel load_model_file(const std::string& path);
void save_model_file(const HmmModel& model, const std::string& path);

// Observations: one token per line, mapped through the vocabulary.
// Throws InvalidModelError on tokens outside the vocabulary.
std::vector<int> tokens_to_ids(const HmmModel& model,
                               const std::vector<std::string>& tokens);
std::vector<int> load_observations_file(const HmmModel& model,
                                        const std::string& path);

// Raw (signed) per-step scores for the observation sequence:
//   R(t, y | ctx) = log P(y | ctx) + log P(obs_t | y).
// The returned oracle owns a copy of everything it needs.
std::unique_ptr<RewardOracle> hmm_raw_oracle(const HmmModel& model,
                                             std::vector<int> observations);

// Same scores shifted up by `offset`, validated non-negative over every
// path-valid (time, state, context); throws NegativeRewardError when the
// offset is insufficient.  Use positivize_offset() to find the tight shift.
std::unique_ptr<RewardOracle> hmm_rewards(const HmmModel& model,
                                          std::vector<int> observations,
                                          double offset);

}  // namespace peekdec

#endif  // PEEKDEC_HMM_HPP_
