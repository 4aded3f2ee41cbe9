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

#include "abfs/threat/scripted.hpp"

#include <algorithm>
#include <stdexcept>

namespace abfs::threat {
namespace {

ConfidenceMap Complete(const std::vector<std::string>& labels,
                       ConfidenceMap conf) {
  for (const auto& l : labels) conf.try_emplace(l, 0.0);
  for (const auto& [l, c] : conf) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
      throw std::invalid_argument("scripted label '" + l + "' not in label set");
    }
  }
  return conf;
}

}  // namespace

ScriptedClassifier::ScriptedClassifier(std::vector<std::string> labels,
                                       ConfidenceMap fallback)
    : labels_(std::move(labels)),
      fallback_(MakeVerdict(Complete(labels_, std::move(fallback)))) {}

void ScriptedClassifier::Script(std::string text, ConfidenceMap confidence) {
  table_[std::move(text)] = MakeVerdict(Complete(labels_, std::move(confidence)));
}

void ScriptedClassifier::ScriptBinary(std::string text, const std::string& label,
                                      double p) {
  if (labels_.size() != 2) {
    throw std::logic_error("ScriptBinary needs exactly two labels");
  }
  const std::string& other = labels_[0] == label ? labels_[1] : labels_[0];
  Script(std::move(text), {{label, p}, {other, 1.0 - p}});
}

ThreatVerdict ScriptedClassifier::Classify(std::string_view input) const {
  auto it = table_.find(std::string(input));
  return it == table_.end() ? fallback_ : it->second;
}

ConstantClassifier::ConstantClassifier(std::vector<std::string> labels,
                                       const std::string& label)
    : labels_(std::move(labels)),
      verdict_(MakeVerdict(Complete(labels_, {{label, 1.0}}))) {}

}  // namespace abfs::threat
