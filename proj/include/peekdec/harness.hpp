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

#ifndef PEEKDEC_HARNESS_HPP_
#define PEEKDEC_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peekdec/hmm.hpp"

namespace peekdec {

// Knobs for the synthetic model generator.  Concentrations are Dirichlet
// parameters (small = peaky rows); edge_density is the Bernoulli keep
// probability for off-diagonal edges (self-loops are always kept so the
// graph stays aperiodic and padding-friendly), 1.0 = fully connected.
struct SyntheticSpec {
  int num_states = 3;
  int order = 1;
  int vocab_size = 4;
  double transition_concentration = 1.0;
  double emission_concentration = 1.0;
  double edge_density = 1.0;
  std::uint64_t seed = 0;
};

// Deterministic in the seed, byte-for-byte: same spec, same JSON.  Retries
// edge sampling until the graph is ergodic (up to a fixed cap, then throws
// NotErgodicError).  State names are s0..s(K-1), tokens w0..w(V-1).
HmmModel generate_synthetic_hmm(const SyntheticSpec& spec);

// Samples a length-`horizon` observation sequence from the model.
std::vector<int> sample_observations(const HmmModel& model, int horizon,
                                     std::uint64_t seed);

// One sweep cell: a decoder at a latency on a seeded instance.
struct RatioReport {
  std::string decoder;
  int latency = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  double opt = 0.0;
  double on = 0.0;
  double ratio = 1.0;       // opt/on
  double agreement = 1.0;   // positionwise match with the exact path
  std::optional<double> bound;  // closed-form ratio bound, empty = n/a
  double wall_time_ms = 0.0;    // 0 unless timing was requested
};

struct SweepOptions {
  std::vector<std::string> decoders;  // names as in decoder_names()
  std::vector<int> latencies;
  std::vector<std::uint64_t> seeds;   // one observation sequence per seed
  int horizon = 100;
  bool padding = true;    // zero-reward margins (bound-checking default)
  std::optional<double> gamma;  // empty = proof-optimal per latency
  double extra_offset = 0.0;    // added on top of the tight positive shift
  bool timing = false;    // fill wall_time_ms (breaks byte-identical output)
  int threads = 0;        // 0 = hardware_concurrency
};

const std::vector<std::string>& decoder_names();

// Runs every (decoder, latency, seed) cell of the grid.  Per seed, one
// observation sequence is sampled and positivized once, and the exact
// reference path is computed once by the offline DP.  Padding margins are
// reward-free and context-masked, so the padded instances decoders see have
// the same optimum; online traces are already sliced back to the real
// window, so agreement compares equal-length label vectors.  Seeds run on a
// small worker pool; results are merged deterministically and sorted by
// (decoder, latency, seed).  ratio >= 1 - 1e-9 on every row by
// construction.
std::vector<RatioReport> run_sweep(const HmmModel& model,
                                   const SweepOptions& options);

// CSV with the fixed header
//   decoder,L,gamma,seed,opt,on,ratio,agreement,bound,wall_time_ms
// reals rendered with 12 fixed decimals, bound "n/a" when absent, LF line
// endings.  Byte-identical for identical inputs.
std::string emit_csv(const std::vector<RatioReport>& reports);

}  // namespace peekdec

#endif  // PEEKDEC_HARNESS_HPP_
