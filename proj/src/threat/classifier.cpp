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

#include "abfs/threat/classifier.hpp"

#include <cmath>
#include <stdexcept>

namespace abfs::threat {

double ThreatVerdict::Of(std::string_view l) const {
  auto it = confidence.find(std::string(l));
  return it == confidence.end() ? 0.0 : it->second;
}

ThreatVerdict MakeVerdict(ConfidenceMap confidence) {
  if (confidence.empty()) {
    throw std::invalid_argument("verdict needs at least one label");
  }
  double total = 0;
  for (const auto& [label, c] : confidence) {
    if (!std::isfinite(c) || c < 0) {
      throw std::invalid_argument("invalid confidence for label '" + label +
                                  "'");
    }
    total += c;
  }
  if (total <= 0) throw std::invalid_argument("confidences sum to zero");

  ThreatVerdict v;
  double best = -1;
  // std::map iterates in label order, so strict '>' keeps the smallest label
  // among ties.
  for (auto& [label, c] : confidence) {
    c /= total;
    if (c > best) {
      best = c;
      v.label = label;
    }
  }
  v.confidence = std::move(confidence);
  return v;
}

bool IsNormalized(const ThreatVerdict& verdict, double tolerance) {
  if (verdict.confidence.empty()) return false;
  double total = 0;
  double best = -1;
  std::string argmax;
  for (const auto& [label, c] : verdict.confidence) {
    if (!(c >= 0 && c <= 1)) return false;
    total += c;
    if (c > best) {
      best = c;
      argmax = label;
    }
  }
  return std::abs(total - 1) <= tolerance && argmax == verdict.label;
}

}  // namespace abfs::threat
