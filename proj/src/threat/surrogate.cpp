// Copyright 2026 The ABFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "abfs/threat/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "abfs/errors.hpp"
#include "abfs/lexicon/tokenizer.hpp"

namespace abfs::threat {

void SurrogateSpec::Validate() const {
  if (label_set.empty()) throw ConfigError("surrogate needs at least one label");
  std::set<std::string> labels(label_set.begin(), label_set.end());
  if (labels.size() != label_set.size()) {
    throw ConfigError("surrogate label set has duplicates");
  }
  if (!(temperature > 0) || !std::isfinite(temperature)) {
    throw ConfigError("surrogate temperature must be positive");
  }
  for (const auto& [label, b] : bias) {
    if (!labels.contains(label)) {
      throw ConfigError("bias for unknown label '" + label + "'");
    }
  }
  for (const auto& [word, per_label] : weights) {
    for (const auto& [label, w] : per_label) {
      if (!labels.contains(label)) {
        throw ConfigError("weight for '" + word + "' names unknown label '" +
                          label + "'");
      }
    }
  }
}

void to_json(nlohmann::json& j, const SurrogateSpec& spec) {
  // Sorted keys so saved specs diff cleanly.
  nlohmann::json weights = nlohmann::json::object();
  std::vector<std::string> words;
  for (const auto& [w, _] : spec.weights) words.push_back(w);
  std::sort(words.begin(), words.end());
  for (const auto& w : words) weights[w] = spec.weights.at(w);
  j = nlohmann::json{{"labels", spec.label_set},
                     {"temperature", spec.temperature},
                     {"bias", spec.bias},
                     {"weights", weights}};
}

void from_json(const nlohmann::json& j, SurrogateSpec& spec) {
  j.at("labels").get_to(spec.label_set);
  spec.temperature = j.value("temperature", 1.0);
  spec.bias = j.value("bias", std::map<std::string, double>{});
  spec.weights.clear();
  if (j.contains("weights")) {
    for (const auto& [word, per_label] : j.at("weights").items()) {
      spec.weights[lexicon::ToLower(word)] =
          per_label.get<std::map<std::string, double>>();
    }
  }
}

SurrogateSpec LoadSurrogateSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open surrogate spec " + path.string());
  SurrogateSpec spec;
  try {
    spec = nlohmann::json::parse(in).get<SurrogateSpec>();
  } catch (const nlohmann::json::exception& e) {
    throw ResourceError("malformed surrogate spec " + path.string() + ": " +
                        e.what());
  }
  spec.Validate();
  return spec;
}

void SaveSurrogateSpec(const SurrogateSpec& spec,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write " + path.string());
  out << nlohmann::json(spec).dump(1) << "\n";
}

ThreatVerdict SurrogateClassify(const SurrogateSpec& spec,
                                std::string_view input) {
  std::map<std::string, double> score;
  for (const auto& l : spec.label_set) {
    auto it = spec.bias.find(l);
    score[l] = it == spec.bias.end() ? 0.0 : it->second;
  }
  if (!input.empty()) {
    for (const auto& tok : lexicon::Tokenize(input).tokens) {
      if (tok.is_punct) continue;
      auto it = spec.weights.find(lexicon::ToLower(tok.surface));
      if (it == spec.weights.end()) continue;
      for (const auto& [label, w] : it->second) score[label] += w;
    }
  }

  double top = -INFINITY;
  for (const auto& [l, s] : score) top = std::max(top, s / spec.temperature);
  ConfidenceMap conf;
  for (const auto& [l, s] : score) {
    conf[l] = std::exp(s / spec.temperature - top);
  }
  return MakeVerdict(std::move(conf));
}

SurrogateClassifier::SurrogateClassifier(SurrogateSpec spec)
    : spec_(std::move(spec)) {
  spec_.Validate();
}

}  // namespace abfs::threat
