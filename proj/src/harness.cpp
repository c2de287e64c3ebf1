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

#include "peekdec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "peekdec/adversary.hpp"
#include "peekdec/bounds.hpp"
#include "peekdec/decode.hpp"
#include "peekdec/errors.hpp"
#include "peekdec/rng.hpp"

namespace peekdec {

namespace {

constexpr int kErgodicRetries = 100;

// Dirichlet(conc, ..., conc) over `count` outcomes, returned as log-probs.
std::vector<double> dirichlet_log_row(Rng& rng, int count, double conc) {
  std::vector<double> row(count);
  double total = 0.0;
  for (double& v : row) {
    v = rng.next_gamma(conc);
    // Guard against a zero draw collapsing the row.
    if (v < 1e-300) v = 1e-300;
    total += v;
  }
  for (double& v : row) v = std::log(v / total);
  return row;
}

StateGraph sample_graph(Rng& rng, int num_states, double density) {
  if (density >= 1.0) return StateGraph::fully_connected(num_states);
  for (int attempt = 0; attempt < kErgodicRetries; ++attempt) {
    std::vector<std::vector<int>> succ(num_states);
    for (int u = 0; u < num_states; ++u) {
      succ[u].push_back(u);  // keep self-loops: aperiodic and never stuck
      for (int v = 0; v < num_states; ++v) {
        if (u != v && rng.next_double() < density) succ[u].push_back(v);
      }
    }
    try {
      return StateGraph(num_states, std::move(succ));
    } catch (const NotErgodicError&) {
      continue;
    }
  }
  throw NotErgodicError("no ergodic graph found at density " +
                        std::to_string(density));
}

}  // namespace

HmmModel generate_synthetic_hmm(const SyntheticSpec& spec) {
  if (spec.num_states < 1 || spec.vocab_size < 1 || spec.order < 1) {
    throw std::invalid_argument("synthetic spec needs positive sizes");
  }
  if (spec.edge_density <= 0.0 || spec.edge_density > 1.0) {
    throw std::invalid_argument("edge density must lie in (0, 1]");
  }
  Rng rng(spec.seed);

  HmmModel model;
  model.order = spec.order;
  for (int s = 0; s < spec.num_states; ++s) {
    model.state_names.push_back("s" + std::to_string(s));
  }
  for (int w = 0; w < spec.vocab_size; ++w) {
    model.vocabulary.push_back("w" + std::to_string(w));
  }
  model.graph = sample_graph(rng, spec.num_states, spec.edge_density);

  // One Dirichlet row per path-valid context, dummy-prefixed ones included
  // so generated files are fully explicit.  Times 1..order+1 cover every
  // dummy-prefix length exactly once.
  const int num_states = spec.num_states;
  for (int time = 1; time <= spec.order + 1; ++time) {
    for_each_context(
        model.graph, spec.order, time, [&](std::span<const int> context) {
          int last = context[spec.order - 1];
          const std::vector<int>* allowed = nullptr;
          std::vector<int> everyone;
          if (last == kDummyState) {
            everyone.resize(num_states);
            for (int s = 0; s < num_states; ++s) everyone[s] = s;
            allowed = &everyone;
          } else {
            allowed = &model.graph.successors(last);
          }
          std::vector<double> logs = dirichlet_log_row(
              rng, static_cast<int>(allowed->size()),
              spec.transition_concentration);
          std::vector<double> row(num_states,
                                  std::numeric_limits<double>::quiet_NaN());
          for (std::size_t k = 0; k < allowed->size(); ++k) {
            row[(*allowed)[k]] = logs[k];
          }
          model.transition_logprobs[encode_context(context, num_states)] =
              std::move(row);
        });
  }

  for (int s = 0; s < num_states; ++s) {
    model.emission_logprobs.push_back(dirichlet_log_row(
        rng, spec.vocab_size, spec.emission_concentration));
  }
  return model;
}

std::vector<int> sample_observations(const HmmModel& model, int horizon,
                                     std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  Rng rng(seed);
  std::vector<int> observations;
  observations.reserve(horizon);
  std::vector<int> context = initial_context(model.order);

  for (int t = 1; t <= horizon; ++t) {
    int last = context[model.order - 1];
    std::vector<int> allowed;
    if (last == kDummyState) {
      allowed.resize(model.num_states());
      for (int s = 0; s < model.num_states(); ++s) allowed[s] = s;
    } else {
      allowed = model.graph.successors(last);
    }
    double roll = rng.next_double();
    int state = allowed.back();
    double cumulative = 0.0;
    for (int y : allowed) {
      cumulative += std::exp(model.transition_logprob(context, y));
      if (roll < cumulative) {
        state = y;
        break;
      }
    }
    roll = rng.next_double();
    int token = static_cast<int>(model.vocabulary.size()) - 1;
    cumulative = 0.0;
    for (std::size_t w = 0; w < model.vocabulary.size(); ++w) {
      cumulative += std::exp(model.emission_logprobs[state][w]);
      if (roll < cumulative) {
        token = static_cast<int>(w);
        break;
      }
    }
    observations.push_back(token);
    context.erase(context.begin());
    context.push_back(state);
  }
  return observations;
}

const std::vector<std::string>& decoder_names() {
  static const std::vector<std::string> names = {
      "greedy", "peek_reset", "peek_search", "randomized_peek_search",
      "viterbi"};
  return names;
}

namespace {

struct SeedArtifacts {
  std::unique_ptr<RewardOracle> raw;
  std::unique_ptr<ShiftedOracle> shifted;
  DecodePath reference;  // exact path; opt is reference.total
};

SeedArtifacts prepare_seed(const HmmModel& model, const SweepOptions& options,
                           std::uint64_t seed) {
  SeedArtifacts art;
  std::vector<int> observations =
      sample_observations(model, options.horizon, seed);
  art.raw = hmm_raw_oracle(model, std::move(observations));
  double offset =
      positivize_offset(*art.raw, model.graph) + options.extra_offset;
  art.shifted = std::make_unique<ShiftedOracle>(*art.raw, offset);
  // Padding margins are reward-free and masked, so the embedded instance has
  // the same optimum: one offline run serves every row of this seed.
  art.reference = viterbi_decode(*art.shifted, model.graph);
  return art;
}

double label_agreement(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || a.size() != b.size()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(a.size());
}

RatioReport run_cell(const HmmModel& model, const SweepOptions& options,
                     const SeedArtifacts& art, const std::string& decoder,
                     int latency, std::uint64_t seed) {
  RatioReport report;
  report.decoder = decoder;
  report.latency = latency;
  report.seed = seed;
  report.opt = art.reference.total;

  auto started = std::chrono::steady_clock::now();
  DecodePath path;
  double gamma = 1.0;
  if (decoder == "viterbi") {
    path = art.reference;
  } else if (decoder == "greedy") {
    path = greedy_decode(*art.shifted, model.graph).path;
  } else if (decoder == "peek_search") {
    PeekConfig config;
    config.latency = latency;
    config.gamma = options.gamma;
    config.padding = options.padding;
    DecodeTrace trace = peek_search_decode(*art.shifted, model.graph, config);
    gamma = trace.gamma_used;
    path = std::move(trace.path);
  } else if (decoder == "randomized_peek_search") {
    path = randomized_peek_search_decode(*art.shifted, model.graph, latency,
                                         seed, options.padding)
               .path;
  } else if (decoder == "peek_reset") {
    path = peek_reset_decode(*art.shifted, model.graph, latency,
                             options.padding)
               .path;
  } else {
    throw std::invalid_argument("unknown decoder: " + decoder);
  }
  auto finished = std::chrono::steady_clock::now();

  report.gamma = gamma;
  report.on = path.total;
  if (report.on > 0.0) {
    report.ratio = report.opt / report.on;
  } else {
    report.ratio = report.opt <= 0.0
                       ? 1.0
                       : std::numeric_limits<double>::infinity();
  }
  report.agreement = label_agreement(path.labels, art.reference.labels);

  const int order = model.order;
  const int delta = model.graph.diameter();
  if (decoder == "peek_search") {
    report.bound = peek_search_upper_bound(latency, order, delta);
  } else if (decoder == "randomized_peek_search") {
    report.bound = randomized_upper_bound(latency, order, delta);
  } else if (decoder == "peek_reset") {
    report.bound = peek_reset_upper_bound(latency, order, delta);
  }
  if (options.timing) {
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(finished - started).count();
  }
  return report;
}

}  // namespace

std::vector<RatioReport> run_sweep(const HmmModel& model,
                                   const SweepOptions& options) {
  if (options.decoders.empty() || options.latencies.empty() ||
      options.seeds.empty()) {
    throw std::invalid_argument("sweep needs decoders, latencies and seeds");
  }
  for (const auto& decoder : options.decoders) {
    if (std::find(decoder_names().begin(), decoder_names().end(), decoder) ==
        decoder_names().end()) {
      throw std::invalid_argument("unknown decoder: " + decoder);
    }
  }
  for (int latency : options.latencies) {
    if (latency < 1) throw std::invalid_argument("latencies must be >= 1");
  }

  // One task per seed: positivization and the offline reference are shared
  // across that seed's cells.  Seeds are independent, so any interleaving
  // yields the same rows.
  std::vector<std::vector<RatioReport>> per_seed(options.seeds.size());
  std::atomic<std::size_t> cursor{0};
  int workers = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, options.seeds.size()));

  auto worker = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= options.seeds.size()) return;
      std::uint64_t seed = options.seeds[i];
      SeedArtifacts art = prepare_seed(model, options, seed);
      for (const auto& decoder : options.decoders) {
        for (int latency : options.latencies) {
          per_seed[i].push_back(
              run_cell(model, options, art, decoder, latency, seed));
        }
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<RatioReport> rows;
  for (auto& part : per_seed) {
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  std::sort(rows.begin(), rows.end(),
            [](const RatioReport& a, const RatioReport& b) {
              if (a.decoder != b.decoder) return a.decoder < b.decoder;
              if (a.latency != b.latency) return a.latency < b.latency;
              return a.seed < b.seed;
            });
  return rows;
}

std::string emit_csv(const std::vector<RatioReport>& reports) {
  std::string out =
      "decoder,L,gamma,seed,opt,on,ratio,agreement,bound,wall_time_ms\n";
  char buffer[512];
  for (const auto& r : reports) {
    std::string bound = "n/a";
    if (r.bound) {
      std::snprintf(buffer, sizeof(buffer), "%.12f", *r.bound);
      bound = buffer;
    }
    std::snprintf(buffer, sizeof(buffer),
                  "%s,%d,%.12f,%llu,%.12f,%.12f,%.12f,%.12f,%s,%.3f\n",
                  r.decoder.c_str(), r.latency, r.gamma,
                  static_cast<unsigned long long>(r.seed), r.opt, r.on,
                  r.ratio, r.agreement, bound.c_str(), r.wall_time_ms);
    out += buffer;
  }
  return out;
}

}  // namespace peekdec
