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

// Word importance ranking. A word's importance is measured by deleting it and
// watching the threat model's confidence move; the adaptive variant adds the
// mean of that word position's most recent score changes.

#ifndef ABFS_SEARCH_WIR_HPP_
#define ABFS_SEARCH_WIR_HPP_

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/search/node.hpp"
#include "abfs/threat/classifier.hpp"
#include "abfs/threat/query_ledger.hpp"

namespace abfs::search {

// Importance of one word given the verdicts with and without it. `y` is the
// label of the full text.
//   deletion keeps y:   C(I, y) - C(I', y)
//   deletion flips y':  C(I, y) + C(I', y') - C(I', y) - C(I, y')
double WirScore(const threat::ThreatVerdict& full,
                const threat::ThreatVerdict& deleted, const std::string& y);

// Score change recorded into the history: C(I, y) - C(I', y).
double ScoreDelta(const threat::ThreatVerdict& full,
                  const threat::ThreatVerdict& deleted, const std::string& y);

// Per-position history of the last k2 score changes, scoped to one search.
class WirState {
 public:
  // `alpha` weights the retained records oldest first; empty means all 1.
  explicit WirState(std::size_t k2 = 5, std::vector<double> alpha = {});

  void Record(std::size_t position, double delta);

  // base + (1/m) * sum_j alpha_j * delta_j over the m = min(k2, available)
  // most recent records. Unchanged when the position has no history.
  double Adjust(std::size_t position, double base) const;

  std::vector<double> History(std::size_t position) const;
  std::size_t k2() const { return k2_; }

 private:
  std::size_t k2_;
  std::vector<double> alpha_;
  std::map<std::size_t, std::deque<double>> history_;
};

struct WirProbe {
  std::size_t position = 0;
  std::string deleted_text;
  double score = 0;  // raw importance
  double delta = 0;  // ScoreDelta for the history
};

// Deletion probes for every position in `positions` (in the given order), one
// ledger query each. BudgetExhausted propagates and the partial result is
// discarded by the caller.
std::vector<WirProbe> WirScores(const lexicon::TokenizedInput& original,
                                const SearchNode& node,
                                const threat::ThreatVerdict& node_verdict,
                                std::span<const std::size_t> positions,
                                threat::QueryLedger& ledger,
                                const std::string& y);

}  // namespace abfs::search

#endif  // ABFS_SEARCH_WIR_HPP_
