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

#include "peekdec/hmm.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "peekdec/errors.hpp"

namespace peekdec {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

using nlohmann::json;

std::unordered_map<std::string, int> name_index(
    const std::vector<std::string>& names, const char* what) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    if (name.empty() || name == "*" || name.find(',') != std::string::npos) {
      throw InvalidModelError(std::string(what) + " name '" + name +
                              "' is reserved or malformed");
    }
    if (!index.emplace(name, static_cast<int>(i)).second) {
      throw InvalidModelError(std::string(what) + " name '" + name +
                              "' appears twice");
    }
  }
  return index;
}

std::string context_key(std::span<const int> context,
                        const std::vector<std::string>& names) {
  std::string key;
  for (std::size_t j = 0; j < context.size(); ++j) {
    if (j > 0) key += ',';
    key += context[j] == kDummyState ? "*" : names[context[j]];
  }
  return key;
}

std::vector<int> parse_context_key(
    const std::string& key, int order,
    const std::unordered_map<std::string, int>& states) {
  std::vector<int> context;
  std::stringstream stream(key);
  std::string part;
  while (std::getline(stream, part, ',')) {
    if (part == "*") {
      context.push_back(kDummyState);
    } else {
      auto it = states.find(part);
      if (it == states.end()) {
        throw InvalidModelError("unknown state '" + part +
                                "' in context key '" + key + "'");
      }
      context.push_back(it->second);
    }
  }
  if (static_cast<int>(context.size()) != order) {
    throw InvalidModelError("context key '" + key + "' does not have order " +
                            std::to_string(order) + " entries");
  }
  // Dummies describe the sequence start only, so they must form a prefix.
  for (std::size_t j = 1; j < context.size(); ++j) {
    if (context[j] == kDummyState && context[j - 1] != kDummyState) {
      throw InvalidModelError("context key '" + key +
                              "' has a dummy after a real state");
    }
  }
  return context;
}

}  // namespace

double HmmModel::transition_logprob(std::span<const int> context,
                                    int state) const {
  auto it = transition_logprobs.find(encode_context(context, num_states()));
  if (it != transition_logprobs.end()) {
    double value = it->second[state];
    if (!std::isnan(value)) return value;
  }
  // No row: fall back to a uniform choice over the allowed moves.  Rows are
  // mandatory (and validated present) for fully real contexts, so this only
  // triggers near the sequence start.
  int last = context.empty() ? kDummyState : context[context.size() - 1];
  int choices = last == kDummyState
                    ? num_states()
                    : static_cast<int>(graph.successors(last).size());
  return -std::log(static_cast<double>(choices));
}

std::string save_model_json(const HmmModel& model) {
  json root;
  root["states"] = model.state_names;
  root["order"] = model.order;
  root["vocabulary"] = model.vocabulary;

  json edges = json::object();
  for (int s = 0; s < model.num_states(); ++s) {
    json out = json::array();
    for (int v : model.graph.successors(s)) out.push_back(model.state_names[v]);
    edges[model.state_names[s]] = std::move(out);
  }
  root["edges"] = std::move(edges);

  json transitions = json::object();
  std::vector<int> context(model.order);
  for (const auto& [code, row] : model.transition_logprobs) {
    decode_context(code, model.num_states(), model.order, context);
    json entry = json::object();
    for (int y = 0; y < model.num_states(); ++y) {
      if (!std::isnan(row[y])) entry[model.state_names[y]] = row[y];
    }
    transitions[context_key(context, model.state_names)] = std::move(entry);
  }
  root["transition_logprobs"] = std::move(transitions);

  json emissions = json::object();
  for (int s = 0; s < model.num_states(); ++s) {
    json entry = json::object();
    for (std::size_t w = 0; w < model.vocabulary.size(); ++w) {
      if (!std::isnan(model.emission_logprobs[s][w])) {
        entry[model.vocabulary[w]] = model.emission_logprobs[s][w];
      }
    }
    emissions[model.state_names[s]] = std::move(entry);
  }
  root["emission_logprobs"] = std::move(emissions);

  return root.dump(2) + "\n";
}

HmmModel load_model_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidModelError(std::string("model is not valid JSON: ") +
                            e.what());
  }
  try {
    HmmModel model;
    model.state_names = root.at("states").get<std::vector<std::string>>();
    model.vocabulary = root.at("vocabulary").get<std::vector<std::string>>();
    model.order = root.at("order").get<int>();
    if (model.order < 1) throw InvalidModelError("order must be >= 1");
    if (model.state_names.empty()) {
      throw InvalidModelError("model needs at least one state");
    }
    auto states = name_index(model.state_names, "state");
    auto vocab = name_index(model.vocabulary, "token");
    const int num_states = model.num_states();

    if (root.contains("edges")) {
      std::vector<std::vector<int>> succ(num_states);
      for (const auto& [from, targets] : root.at("edges").items()) {
        auto it = states.find(from);
        if (it == states.end()) {
          throw InvalidModelError("unknown state '" + from + "' in edges");
        }
        for (const auto& target : targets) {
          auto jt = states.find(target.get<std::string>());
          if (jt == states.end()) {
            throw InvalidModelError("unknown edge target for state '" + from +
                                    "'");
          }
          succ[it->second].push_back(jt->second);
        }
      }
      model.graph = StateGraph(num_states, std::move(succ));
    } else {
      model.graph = StateGraph::fully_connected(num_states);
    }

    for (const auto& [key, row] : root.at("transition_logprobs").items()) {
      std::vector<int> context = parse_context_key(key, model.order, states);
      std::vector<double> values(num_states, kNan);
      for (const auto& [name, value] : row.items()) {
        auto it = states.find(name);
        if (it == states.end()) {
          throw InvalidModelError("unknown state '" + name +
                                  "' in transition row '" + key + "'");
        }
        double v = value.get<double>();
        if (!std::isfinite(v)) {
          throw InvalidModelError(
              "non-finite log-prob in transition row '" + key +
              "'; encode impossible moves as absent edges instead");
        }
        values[it->second] = v;
      }
      model.transition_logprobs[encode_context(context, num_states)] =
          std::move(values);
    }

    model.emission_logprobs.assign(
        num_states, std::vector<double>(model.vocabulary.size(), kNan));
    for (const auto& [name, row] : root.at("emission_logprobs").items()) {
      auto it = states.find(name);
      if (it == states.end()) {
        throw InvalidModelError("unknown state '" + name + "' in emissions");
      }
      for (const auto& [token, value] : row.items()) {
        auto jt = vocab.find(token);
        if (jt == vocab.end()) {
          throw InvalidModelError("unknown token '" + token +
                                  "' in emissions of '" + name + "'");
        }
        double v = value.get<double>();
        if (!std::isfinite(v)) {
          throw InvalidModelError("non-finite emission log-prob for '" + name +
                                  "' / '" + token + "'");
        }
        model.emission_logprobs[it->second][jt->second] = v;
      }
    }

    // Every fully real path-valid context needs a complete row over the
    // graph's allowed moves; anything missing would silently decode wrong.
    for_each_context(
        model.graph, model.order, model.order + 1,
        [&](std::span<const int> context) {
          auto it = model.transition_logprobs.find(
              encode_context(context, num_states));
          for (int y : model.graph.successors(context[model.order - 1])) {
            if (it == model.transition_logprobs.end() ||
                std::isnan(it->second[y])) {
              throw InvalidModelError(
                  "missing transition log-prob for context '" +
                  context_key(context, model.state_names) + "' -> '" +
                  model.state_names[y] + "'");
            }
          }
        });
    return model;
  } catch (const json::exception& e) {
    throw InvalidModelError(std::string("malformed model JSON: ") + e.what());
  }
}

HmmModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModelError("cannot open model file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_model_json(buffer.str());
}

void save_model_file(const HmmModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidModelError("cannot write model file: " + path);
  out << save_model_json(model);
}

std::vector<int> tokens_to_ids(const HmmModel& model,
                               const std::vector<std::string>& tokens) {
  auto vocab = name_index(model.vocabulary, "token");
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto it = vocab.find(token);
    if (it == vocab.end()) {
      throw InvalidModelError("observation token '" + token +
                              "' is not in the vocabulary");
    }
    ids.push_back(it->second);
  }
  return ids;
}

std::vector<int> load_observations_file(const HmmModel& model,
                                        const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModelError("cannot open observations file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    tokens.push_back(line);
  }
  if (tokens.empty()) {
    throw InvalidModelError("observations file is empty: " + path);
  }
  return tokens_to_ids(model, tokens);
}

namespace {

class HmmOracle final : public RewardOracle {
 public:
  HmmOracle(HmmModel model, std::vector<int> observations, double offset)
      : model_(std::move(model)),
        observations_(std::move(observations)),
        offset_(offset) {
    for (int token : observations_) {
      if (token < 0 || token >= static_cast<int>(model_.vocabulary.size())) {
        throw InvalidModelError("observation id out of vocabulary range");
      }
    }
    if (observations_.empty()) {
      throw InvalidModelError("empty observation sequence");
    }
  }

  int order() const override { return model_.order; }
  int horizon() const override {
    return static_cast<int>(observations_.size());
  }
  double reward(int time, int state,
                std::span<const int> context) const override {
    double emit = model_.emission_logprobs[state][observations_[time - 1]];
    if (std::isnan(emit)) {
      throw InvalidModelError("no emission log-prob for state '" +
                              model_.state_names[state] + "' on token '" +
                              model_.vocabulary[observations_[time - 1]] +
                              "'");
    }
    return model_.transition_logprob(context, state) + emit + offset_;
  }

 private:
  HmmModel model_;
  std::vector<int> observations_;
  double offset_;
};

}  // namespace

std::unique_ptr<RewardOracle> hmm_raw_oracle(const HmmModel& model,
                                             std::vector<int> observations) {
  return std::make_unique<HmmOracle>(model, std::move(observations), 0.0);
}

std::unique_ptr<RewardOracle> hmm_rewards(const HmmModel& model,
                                          std::vector<int> observations,
                                          double offset) {
  auto oracle =
      std::make_unique<HmmOracle>(model, std::move(observations), offset);
  for (int time = 1; time <= oracle->horizon(); ++time) {
    for_each_context_state(
        model.graph, model.order, time,
        [&](std::span<const int> context, int y) {
          double r = oracle->reward(time, y, context);
          if (!(r >= 0.0)) {
            throw NegativeRewardError(
                "offset " + std::to_string(offset) +
                " leaves a negative reward at time " + std::to_string(time) +
                ", state '" + model.state_names[y] + "'");
          }
        });
  }
  return oracle;
}

}  // namespace peekdec
