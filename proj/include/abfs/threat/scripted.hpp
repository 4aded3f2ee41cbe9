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

#ifndef ABFS_THREAT_SCRIPTED_HPP_
#define ABFS_THREAT_SCRIPTED_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "abfs/threat/classifier.hpp"

namespace abfs::threat {

// Lookup-table classifier: exact text -> confidence map, with a fallback for
// texts that are not scripted.
class ScriptedClassifier final : public Classifier {
 public:
  ScriptedClassifier(std::vector<std::string> labels, ConfidenceMap fallback);

  void Script(std::string text, ConfidenceMap confidence);

  // Binary helper: `label` gets `p`, the other label 1 - p.
  void ScriptBinary(std::string text, const std::string& label, double p);

  ThreatVerdict Classify(std::string_view input) const override;
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_;
  ThreatVerdict fallback_;
  std::unordered_map<std::string, ThreatVerdict> table_;
};

// Always answers `label` with full confidence.
class ConstantClassifier final : public Classifier {
 public:
  ConstantClassifier(std::vector<std::string> labels, const std::string& label);

  ThreatVerdict Classify(std::string_view) const override { return verdict_; }
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_;
  ThreatVerdict verdict_;
};

}  // namespace abfs::threat

#endif  // ABFS_THREAT_SCRIPTED_HPP_
