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

// Command-line front end: model generation, online decoding, ratio sweeps,
// closed-form bounds, and the adversarial game.
//
// Exit codes: 0 success, 2 invalid input or arguments, 3 a bound requested
// with --strict is inapplicable at the given parameters.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peekdec/adversary.hpp"
#include "peekdec/bounds.hpp"
#include "peekdec/decode.hpp"
#include "peekdec/errors.hpp"
#include "peekdec/harness.hpp"
#include "peekdec/hmm.hpp"
#include "peekdec/rng.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitInapplicable = 3;

std::string format_value(const std::optional<double>& value) {
  if (!value) return "n/a";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12f", *value);
  return buffer;
}

std::string format_value(double value) {
  return format_value(std::optional<double>(value));
}

int run_gen(const peekdec::SyntheticSpec& spec, const std::string& model_out,
            const std::string& obs_out, int horizon,
            std::uint64_t obs_seed) {
  peekdec::HmmModel model = peekdec::generate_synthetic_hmm(spec);
  peekdec::save_model_file(model, model_out);
  std::cerr << "wrote model with " << model.num_states() << " states (order "
            << model.order << ", diameter " << model.graph.diameter()
            << ") to " << model_out << "\n";
  if (!obs_out.empty()) {
    std::vector<int> obs =
        peekdec::sample_observations(model, horizon, obs_seed);
    std::ofstream out(obs_out);
    if (!out) throw std::runtime_error("cannot write " + obs_out);
    for (int token : obs) out << model.vocabulary[token] << "\n";
    std::cerr << "wrote " << obs.size() << " observations to " << obs_out
              << "\n";
  }
  return 0;
}

int run_decode(const std::string& model_path, const std::string& obs_path,
               const std::string& decoder, int latency,
               std::optional<double> gamma, bool padding, double extra_offset,
               std::uint64_t seed, bool summary) {
  peekdec::HmmModel model = peekdec::load_model_file(model_path);
  std::vector<int> obs = peekdec::load_observations_file(model, obs_path);
  auto raw = peekdec::hmm_raw_oracle(model, obs);
  double offset =
      peekdec::positivize_offset(*raw, model.graph) + extra_offset;
  peekdec::ShiftedOracle oracle(*raw, offset);

  peekdec::DecodePath path;
  if (decoder == "viterbi") {
    path = peekdec::viterbi_decode(oracle, model.graph);
  } else if (decoder == "greedy") {
    path = peekdec::greedy_decode(oracle, model.graph).path;
  } else if (decoder == "peek_search") {
    peekdec::PeekConfig config;
    config.latency = latency;
    config.gamma = gamma;
    config.padding = padding;
    path = peekdec::peek_search_decode(oracle, model.graph, config).path;
  } else if (decoder == "randomized_peek_search") {
    path = peekdec::randomized_peek_search_decode(oracle, model.graph,
                                                  latency, seed, padding)
               .path;
  } else if (decoder == "peek_reset") {
    path = peekdec::peek_reset_decode(oracle, model.graph, latency, padding)
               .path;
  } else {
    throw CLI::ValidationError("--decoder", "unknown decoder: " + decoder);
  }

  for (int label : path.labels) std::cout << model.state_names[label] << "\n";
  if (summary) {
    peekdec::DecodePath exact = peekdec::viterbi_decode(oracle, model.graph);
    double ratio = path.total > 0.0
                       ? exact.total / path.total
                       : (exact.total <= 0.0
                              ? 1.0
                              : std::numeric_limits<double>::infinity());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < path.labels.size(); ++i) {
      if (path.labels[i] == exact.labels[i]) ++hits;
    }
    std::cerr << "on=" << format_value(path.total)
              << " opt=" << format_value(exact.total)
              << " ratio=" << format_value(ratio) << " agreement="
              << format_value(static_cast<double>(hits) /
                              static_cast<double>(path.labels.size()))
              << " offset=" << format_value(offset) << "\n";
  }
  return 0;
}

int run_sweep_cmd(const std::string& model_path,
                  const peekdec::SyntheticSpec& spec,
                  peekdec::SweepOptions options, int num_seeds,
                  std::uint64_t seed0, const std::string& out_path) {
  peekdec::HmmModel model = model_path.empty()
                                ? peekdec::generate_synthetic_hmm(spec)
                                : peekdec::load_model_file(model_path);
  if (options.decoders.empty()) options.decoders = peekdec::decoder_names();
  options.seeds.resize(num_seeds);
  std::iota(options.seeds.begin(), options.seeds.end(), seed0);
  std::string csv = peekdec::emit_csv(peekdec::run_sweep(model, options));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << csv;
    std::cerr << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_bounds(int latency, int order, int delta, double epsilon,
               bool strict) {
  auto gamma = peekdec::optimal_gamma(latency, order, delta);
  auto peek = peekdec::peek_search_upper_bound(latency, order, delta);
  auto randomized = peekdec::randomized_upper_bound(latency, order, delta);
  auto reset = peekdec::peek_reset_upper_bound(latency, order, delta);
  std::cout << "optimal_gamma=" << format_value(gamma) << "\n"
            << "peek_search_upper_bound=" << format_value(peek) << "\n"
            << "randomized_upper_bound=" << format_value(randomized) << "\n"
            << "peek_reset_upper_bound=" << format_value(reset) << "\n"
            << "deterministic_lower_bound="
            << format_value(
                   peekdec::deterministic_lower_bound(latency, order, delta))
            << "\n"
            << "randomized_lower_bound="
            << format_value(peekdec::randomized_lower_bound(latency, order,
                                                            delta, epsilon))
            << "\n"
            << "adversary_constant="
            << format_value(
                   peekdec::adversary_constant_a(latency, order + delta - 1))
            << "\n"
            << "game_floor="
            << format_value(
                   peekdec::adversary_game_floor(latency, order + delta - 1))
            << "\n";
  if (strict && (!gamma || !peek || !randomized || !reset)) {
    std::cerr << "inapplicable bound at L=" << latency << " n=" << order
              << " delta=" << delta << "\n";
    return kExitInapplicable;
  }
  return 0;
}

int run_adversary(const std::string& decoder, int latency, int order,
                  int delta, std::uint64_t seed, double epsilon, int trials) {
  if (trials > 0) {
    // Randomized-instance mode: estimate the expected online reward of the
    // randomized decoder against the hidden-payoff instance.
    double mean_on = 0.0;
    double opt = 0.0;
    int num_states = 0;
    for (int trial = 0; trial < trials; ++trial) {
      peekdec::RandomizedInstance instance =
          peekdec::randomized_adversary_instance(epsilon, delta, order,
                                                 latency, seed + trial);
      peekdec::DecodeTrace trace = peekdec::randomized_peek_search_decode(
          *instance.oracle, instance.graph, latency, seed + trial);
      mean_on += trace.path.total;
      opt = instance.opt;
      num_states = instance.num_states;
    }
    mean_on /= trials;
    std::cout << "trials=" << trials << "\n"
              << "num_states=" << num_states << "\n"
              << "opt=" << format_value(opt) << "\n"
              << "mean_on=" << format_value(mean_on) << "\n"
              << "mean_ratio=" << format_value(opt / mean_on) << "\n"
              << "randomized_lower_bound="
              << format_value(peekdec::randomized_lower_bound(latency, order,
                                                              delta, epsilon))
              << "\n";
    return 0;
  }

  std::unique_ptr<peekdec::OnlinePolicy> policy;
  if (decoder == "greedy") {
    policy = std::make_unique<peekdec::GreedyPolicy>();
  } else if (decoder == "peek_search") {
    peekdec::PeekConfig config;
    config.latency = latency;
    policy = std::make_unique<peekdec::PeekSearchPolicy>(config);
  } else if (decoder == "randomized_peek_search") {
    policy =
        std::make_unique<peekdec::RandomizedPeekPolicy>(latency, seed);
  } else if (decoder == "peek_reset") {
    policy = std::make_unique<peekdec::PeekResetPolicy>(latency);
  } else {
    throw CLI::ValidationError("--decoder", "unknown decoder: " + decoder);
  }
  peekdec::GameOutcome outcome =
      peekdec::play_deterministic_game(*policy, latency, order, delta);
  std::cout << "decoder=" << decoder << "\n"
            << "opt=" << format_value(outcome.opt) << "\n"
            << "on=" << format_value(outcome.on) << "\n"
            << "ratio="
            << (std::isinf(outcome.ratio) ? std::string("inf")
                                          : format_value(outcome.ratio))
            << "\n"
            << "floor=" << format_value(outcome.floor) << "\n"
            << "audit_violations=" << outcome.audit_violations << "\n"
            << "commitment_consistent="
            << (outcome.commitment_consistent ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Online decoding under a hard latency budget: bounded-lookahead "
      "decoders, competitive-ratio bounds, and adversarial instances."};
  app.require_subcommand(1);

  // ---- gen ----
  peekdec::SyntheticSpec spec;
  std::string model_out = "model.json";
  std::string obs_out;
  int gen_horizon = 100;
  std::uint64_t obs_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic model");
  gen->add_option("--states", spec.num_states, "Number of states")
      ->check(CLI::PositiveNumber);
  gen->add_option("--order", spec.order, "Context length")
      ->check(CLI::PositiveNumber);
  gen->add_option("--vocab", spec.vocab_size, "Vocabulary size")
      ->check(CLI::PositiveNumber);
  gen->add_option("--density", spec.edge_density,
                  "Off-diagonal edge keep probability in (0,1]");
  gen->add_option("--transition-concentration",
                  spec.transition_concentration,
                  "Dirichlet concentration for transition rows");
  gen->add_option("--emission-concentration", spec.emission_concentration,
                  "Dirichlet concentration for emission rows");
  gen->add_option("--seed", spec.seed, "Generator seed");
  gen->add_option("--model-out", model_out, "Output model path");
  gen->add_option("--obs-out", obs_out,
                  "Also sample observations to this path");
  gen->add_option("--horizon", gen_horizon, "Observation count for --obs-out")
      ->check(CLI::PositiveNumber);
  gen->add_option("--obs-seed", obs_seed, "Sampling seed for --obs-out");

  // ---- decode ----
  std::string model_path;
  std::string obs_path;
  std::string decoder = "peek_search";
  int latency = 1;
  std::optional<double> gamma;
  bool no_padding = false;
  double extra_offset = 0.0;
  std::uint64_t seed = 0;
  bool summary = false;
  CLI::App* decode = app.add_subcommand(
      "decode", "Decode an observation file, one state name per line");
  decode->add_option("--model", model_path, "Model JSON path")->required();
  decode->add_option("--obs", obs_path, "Observations, one token per line")
      ->required();
  decode->add_option("--decoder", decoder,
                     "greedy|peek_reset|peek_search|randomized_peek_search|"
                     "viterbi");
  decode->add_option("--latency", latency, "Lookahead budget L")
      ->check(CLI::NonNegativeNumber);
  decode->add_option("--gamma", gamma,
                     "Discount for peek_search (default: proof-optimal)");
  decode->add_flag("--no-padding", no_padding,
                   "Decode the raw instance without zero-reward margins");
  decode->add_option("--extra-offset", extra_offset,
                     "Extra reward shift on top of the tight one");
  decode->add_option("--seed", seed, "Seed for randomized_peek_search");
  decode->add_flag("--summary", summary,
                   "Print reward totals and ratio to stderr");

  // ---- sweep ----
  peekdec::SweepOptions sweep_options;
  std::string sweep_model_path;
  peekdec::SyntheticSpec sweep_spec;
  int num_seeds = 10;
  std::uint64_t seed0 = 0;
  std::string out_path;
  bool sweep_no_padding = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Competitive-ratio sweep over decoders, latencies and seeds");
  sweep->add_option("--model", sweep_model_path,
                    "Model JSON path (default: generate synthetic)");
  sweep->add_option("--states", sweep_spec.num_states,
                    "Synthetic states (no --model)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--order", sweep_spec.order,
                    "Synthetic context length (no --model)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--vocab", sweep_spec.vocab_size,
                    "Synthetic vocabulary (no --model)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--density", sweep_spec.edge_density,
                    "Synthetic edge density (no --model)");
  sweep->add_option("--gen-seed", sweep_spec.seed, "Synthetic model seed");
  sweep->add_option("--decoders", sweep_options.decoders,
                    "Decoder names (default: all)")
      ->delimiter(',');
  sweep->add_option("--latencies", sweep_options.latencies,
                    "Latency budgets")
      ->delimiter(',')
      ->required();
  sweep->add_option("--num-seeds", num_seeds, "Instances per cell")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed0", seed0, "First instance seed");
  sweep->add_option("--horizon", sweep_options.horizon, "Sequence length")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--gamma", sweep_options.gamma,
                    "Discount override for peek_search");
  sweep->add_flag("--no-padding", sweep_no_padding,
                  "Run on raw instances without zero-reward margins");
  sweep->add_option("--extra-offset", sweep_options.extra_offset,
                    "Extra reward shift on top of the tight one");
  sweep->add_flag("--timing", sweep_options.timing,
                  "Fill wall_time_ms (output no longer byte-stable)");
  sweep->add_option("--threads", sweep_options.threads,
                    "Worker threads (0 = hardware)");
  sweep->add_option("--out", out_path, "CSV output path (default: stdout)");

  // ---- bounds ----
  int b_latency = 1;
  int b_order = 1;
  int b_delta = 1;
  double b_epsilon = 0.5;
  bool strict = false;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Closed-form competitive-ratio bounds at (L, n, delta)");
  bounds->add_option("--latency", b_latency, "Latency budget L")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--order", b_order, "Context length n")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--delta", b_delta, "Graph diameter")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--epsilon", b_epsilon,
                     "Slack for the randomized lower bound");
  bounds->add_flag("--strict", strict,
                   "Exit 3 when an upper bound is inapplicable");

  // ---- adversary ----
  std::string adv_decoder = "peek_search";
  int adv_latency = 1;
  int adv_order = 1;
  int adv_delta = 1;
  std::uint64_t adv_seed = 0;
  double adv_epsilon = 0.5;
  int adv_trials = 0;
  CLI::App* adversary = app.add_subcommand(
      "adversary", "Play the adaptive lower-bound game against a decoder");
  adversary->add_option("--decoder", adv_decoder,
                        "greedy|peek_reset|peek_search|"
                        "randomized_peek_search");
  adversary->add_option("--latency", adv_latency, "Latency budget L")
      ->check(CLI::PositiveNumber);
  adversary->add_option("--order", adv_order, "Context length n")
      ->check(CLI::PositiveNumber);
  adversary->add_option("--delta", adv_delta, "Graph diameter")
      ->check(CLI::PositiveNumber);
  adversary->add_option("--seed", adv_seed,
                        "Seed for randomized_peek_search / trials");
  adversary->add_option("--epsilon", adv_epsilon,
                        "Randomized-instance slack (with --trials)");
  adversary->add_option(
      "--trials", adv_trials,
      "Run N randomized-instance trials instead of the deterministic game");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (gen->parsed()) {
      return run_gen(spec, model_out, obs_out, gen_horizon, obs_seed);
    }
    if (decode->parsed()) {
      return run_decode(model_path, obs_path, decoder, latency, gamma,
                        !no_padding, extra_offset, seed, summary);
    }
    if (sweep->parsed()) {
      sweep_options.padding = !sweep_no_padding;
      return run_sweep_cmd(sweep_model_path, sweep_spec, sweep_options,
                           num_seeds, seed0, out_path);
    }
    if (bounds->parsed()) {
      return run_bounds(b_latency, b_order, b_delta, b_epsilon, strict);
    }
    if (adversary->parsed()) {
      return run_adversary(adv_decoder, adv_latency, adv_order, adv_delta,
                           adv_seed, adv_epsilon, adv_trials);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
