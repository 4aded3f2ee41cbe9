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

// Deterministic bag-of-words classifier standing in for an LLM at desk scale:
//   score(l) = bias(l) + sum over word tokens t of weight(lower(t), l)
//   confidence = softmax(score / temperature)

#ifndef ABFS_THREAT_SURROGATE_HPP_
#define ABFS_THREAT_SURROGATE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "abfs/threat/classifier.hpp"

namespace abfs::threat {

struct SurrogateSpec {
  std::vector<std::string> label_set;
  // word -> label -> weight; words are matched lowercase.
  std::unordered_map<std::string, std::map<std::string, double>> weights;
  std::map<std::string, double> bias;
  double temperature = 1.0;

  // Throws ConfigError unless label_set is non-empty and unique, temperature
  // is positive and every weight/bias label belongs to label_set.
  void Validate() const;
};

// JSON form:
//   {"labels": [...], "temperature": t, "bias": {label: b},
//    "weights": {word: {label: w}}}
void to_json(nlohmann::json& j, const SurrogateSpec& spec);
void from_json(const nlohmann::json& j, SurrogateSpec& spec);

SurrogateSpec LoadSurrogateSpec(const std::filesystem::path& path);
void SaveSurrogateSpec(const SurrogateSpec& spec,
                       const std::filesystem::path& path);

// Pure function of (spec, input).
ThreatVerdict SurrogateClassify(const SurrogateSpec& spec,
                                std::string_view input);

class SurrogateClassifier final : public Classifier {
 public:
  explicit SurrogateClassifier(SurrogateSpec spec);

  ThreatVerdict Classify(std::string_view input) const override {
    return SurrogateClassify(spec_, input);
  }
  const std::vector<std::string>& labels() const override {
    return spec_.label_set;
  }
  const SurrogateSpec& spec() const { return spec_; }

 private:
  SurrogateSpec spec_;
};

}  // namespace abfs::threat

#endif  // ABFS_THREAT_SURROGATE_HPP_
