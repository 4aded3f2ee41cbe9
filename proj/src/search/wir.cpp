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

#include "abfs/search/wir.hpp"

#include <stdexcept>

namespace abfs::search {

double WirScore(const threat::ThreatVerdict& full,
                const threat::ThreatVerdict& deleted, const std::string& y) {
  if (deleted.label == y) return full.Of(y) - deleted.Of(y);
  const std::string& flipped = deleted.label;
  return full.Of(y) + deleted.Of(flipped) - deleted.Of(y) - full.Of(flipped);
}

double ScoreDelta(const threat::ThreatVerdict& full,
                  const threat::ThreatVerdict& deleted, const std::string& y) {
  return full.Of(y) - deleted.Of(y);
}

WirState::WirState(std::size_t k2, std::vector<double> alpha)
    : k2_(k2), alpha_(std::move(alpha)) {
  if (k2_ == 0) throw std::invalid_argument("k2 must be at least 1");
  if (!alpha_.empty() && alpha_.size() != k2_) {
    throw std::invalid_argument("alpha needs exactly k2 weights");
  }
}

void WirState::Record(std::size_t position, double delta) {
  auto& ring = history_[position];
  ring.push_back(delta);
  while (ring.size() > k2_) ring.pop_front();
}

double WirState::Adjust(std::size_t position, double base) const {
  auto it = history_.find(position);
  if (it == history_.end() || it->second.empty()) return base;
  const auto& ring = it->second;
  double sum = 0;
  for (std::size_t j = 0; j < ring.size(); ++j) {
    sum += (alpha_.empty() ? 1.0 : alpha_[j]) * ring[j];
  }
  return base + sum / static_cast<double>(ring.size());
}

std::vector<double> WirState::History(std::size_t position) const {
  auto it = history_.find(position);
  if (it == history_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<WirProbe> WirScores(const lexicon::TokenizedInput& original,
                                const SearchNode& node,
                                const threat::ThreatVerdict& node_verdict,
                                std::span<const std::size_t> positions,
                                threat::QueryLedger& ledger,
                                const std::string& y) {
  std::vector<WirProbe> probes;
  probes.reserve(positions.size());
  for (std::size_t pos : positions) {
    WirProbe p;
    p.position = pos;
    p.deleted_text = original.RenderWithout(pos, node.edits);
    if (p.deleted_text.find_first_not_of(" \t\r\n") == std::string::npos) {
      // Nothing left to classify; the word carries the whole input.
      p.score = node_verdict.Of(y);
      p.delta = p.score;
    } else {
      const threat::ThreatVerdict deleted = ledger.Classify(p.deleted_text);
      p.score = WirScore(node_verdict, deleted, y);
      p.delta = ScoreDelta(node_verdict, deleted, y);
    }
    probes.push_back(std::move(p));
  }
  return probes;
}

}  // namespace abfs::search
