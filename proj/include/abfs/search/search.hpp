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

// Test-case search over a transformation space.
//
// The best-first strategies keep a priority queue of candidate texts keyed by
// the threat model's confidence in the ground-truth label. Each iteration
// dequeues the lowest-confidence text, ranks its words by importance, and
// substitutes words in that order; children that beat the best case so far
// are enqueued. The search stops at the first child that flips the label,
// when the queue runs dry, or when the query budget is spent.
//
// The greedy strategies expand the same way but commit to the single best
// child and drop its siblings. They succeed only when the committed child
// flips the label and stop when no child improves.
//
//   abfs         best-first, adaptive importance ranking
//   bfs_plain    best-first, raw importance ranking
//   greedy       greedy, adaptive importance ranking
//   greedy_plain greedy, raw importance ranking

#ifndef ABFS_SEARCH_SEARCH_HPP_
#define ABFS_SEARCH_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/transform_space.hpp"
#include "abfs/search/node.hpp"
#include "abfs/search/wir.hpp"
#include "abfs/threat/query_ledger.hpp"

namespace abfs::search {

enum class Strategy { kAbfs, kBfsPlain, kGreedy, kGreedyPlain };

std::string_view ToString(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
bool IsAdaptive(Strategy s);
bool IsBestFirst(Strategy s);

struct SearchConfig {
  Strategy strategy = Strategy::kAbfs;
  std::size_t max_query = 3000;
  double rho_max = 0.10;
  std::uint64_t seed = 0;
  std::size_t k2 = 5;
  std::vector<double> alpha;  // empty = all ones

  void Validate() const;  // throws ConfigError
};

enum class SearchStatus { kSuccess, kBudgetExhausted, kQueueEmpty, kSkipped };

std::string_view ToString(SearchStatus s);
std::optional<SearchStatus> ParseStatus(std::string_view name);

struct SearchOutcome {
  SearchStatus status = SearchStatus::kQueueEmpty;
  SearchNode best_case;
  threat::ThreatVerdict original_verdict;
  threat::ThreatVerdict final_verdict;  // verdict on best_case.text
  std::size_t queries_used = 0;
  std::size_t iterations = 0;
  std::chrono::duration<double> wall_time{0};
};

// Optional instrumentation. Every field is appended to as the search runs.
struct SearchTrace {
  struct Enqueue {
    std::string text;
    double priority;
    double best_before;  // best-case priority at enqueue time
  };
  struct Ranking {
    std::string node_text;
    std::vector<WirProbe> probes;
    std::vector<double> adjusted;       // aligned with probes
    std::vector<std::size_t> order;     // positions, expansion order
  };
  std::vector<Enqueue> enqueues;
  std::vector<SearchNode> dequeued;
  std::vector<double> best_history;  // best-case priority after each update
  std::vector<Ranking> rankings;
};

// True iff no edit touches a stop-word or frozen position and
// |edits| / PerturbableCount() <= rho_max.
bool ConstraintCheck(const SearchNode& candidate,
                     const lexicon::TokenizedInput& original, double rho_max);

struct Expansion {
  std::vector<SearchNode> children;  // in candidate order
  bool budget_exhausted = false;
};

// One child per candidate at `position` that passes ConstraintCheck, each
// scored with one ledger query. Positions already edited in `node` yield
// nothing. `next_seq` supplies insertion ordinals.
Expansion Expand(const SearchNode& node, std::size_t position,
                 const lexicon::TokenizedInput& original,
                 const lexicon::TransformSpace& space,
                 threat::QueryLedger& ledger, const std::string& y,
                 const SearchConfig& config, std::uint64_t& next_seq);

// Dispatches on config.strategy. If the threat model already misclassifies
// the original text the result is kSkipped after one query.
SearchOutcome RunSearch(const lexicon::TokenizedInput& original,
                        const lexicon::TransformSpace& space,
                        threat::QueryLedger& ledger, const std::string& y,
                        const SearchConfig& config,
                        SearchTrace* trace = nullptr);

SearchOutcome BestFirstSearch(const lexicon::TokenizedInput& original,
                              const lexicon::TransformSpace& space,
                              threat::QueryLedger& ledger, const std::string& y,
                              const SearchConfig& config,
                              SearchTrace* trace = nullptr);

SearchOutcome GreedySearch(const lexicon::TokenizedInput& original,
                           const lexicon::TransformSpace& space,
                           threat::QueryLedger& ledger, const std::string& y,
                           const SearchConfig& config,
                           SearchTrace* trace = nullptr);

}  // namespace abfs::search

#endif  // ABFS_SEARCH_SEARCH_HPP_
