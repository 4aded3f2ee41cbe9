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

// The black-box classifier under test ("threat model") and the verdict it
// returns for one input.

#ifndef ABFS_THREAT_CLASSIFIER_HPP_
#define ABFS_THREAT_CLASSIFIER_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace abfs::threat {

using ConfidenceMap = std::map<std::string, double>;

struct ThreatVerdict {
  std::string label;
  ConfidenceMap confidence;

  // Confidence of `label`, 0 when absent.
  double Of(std::string_view label) const;

  friend bool operator==(const ThreatVerdict&, const ThreatVerdict&) = default;
};

// Normalises `confidence` to sum to one and picks the argmax, breaking ties
// by the lexicographically smallest label. Throws std::invalid_argument for
// an empty map, negative or non-finite entries, or an all-zero map.
ThreatVerdict MakeVerdict(ConfidenceMap confidence);

// True iff the map sums to 1 within `tolerance`, every value lies in [0, 1]
// and `label` is the tie-broken argmax.
bool IsNormalized(const ThreatVerdict& verdict, double tolerance = 1e-6);

// Classifiers must be safe to call from several threads at once.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ThreatVerdict Classify(std::string_view input) const = 0;

  virtual const std::vector<std::string>& labels() const = 0;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

}  // namespace abfs::threat

#endif  // ABFS_THREAT_CLASSIFIER_HPP_
