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

#include "abfs/search/search.hpp"

#include <algorithm>
#include <numeric>

#include "abfs/errors.hpp"

namespace abfs::search {

using lexicon::TokenizedInput;
using lexicon::TransformSpace;
using threat::QueryLedger;
using threat::ThreatVerdict;

bool SearchNode::Edits(std::size_t position) const {
  return std::any_of(edits.begin(), edits.end(), [&](const Substitution& e) {
    return e.position == position;
  });
}

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kAbfs:
      return "abfs";
    case Strategy::kBfsPlain:
      return "bfs_plain";
    case Strategy::kGreedy:
      return "greedy";
    case Strategy::kGreedyPlain:
      return "greedy_plain";
  }
  return "abfs";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kAbfs, Strategy::kBfsPlain, Strategy::kGreedy,
                     Strategy::kGreedyPlain}) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

bool IsAdaptive(Strategy s) {
  return s == Strategy::kAbfs || s == Strategy::kGreedy;
}

bool IsBestFirst(Strategy s) {
  return s == Strategy::kAbfs || s == Strategy::kBfsPlain;
}

std::string_view ToString(SearchStatus s) {
  switch (s) {
    case SearchStatus::kSuccess:
      return "success";
    case SearchStatus::kBudgetExhausted:
      return "budget_exhausted";
    case SearchStatus::kQueueEmpty:
      return "queue_empty";
    case SearchStatus::kSkipped:
      return "skipped";
  }
  return "queue_empty";
}

std::optional<SearchStatus> ParseStatus(std::string_view name) {
  for (SearchStatus s :
       {SearchStatus::kSuccess, SearchStatus::kBudgetExhausted,
        SearchStatus::kQueueEmpty, SearchStatus::kSkipped}) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

void SearchConfig::Validate() const {
  if (max_query == 0) throw ConfigError("max_query must be positive");
  if (!(rho_max > 0 && rho_max <= 1)) {
    throw ConfigError("rho_max must lie in (0, 1]");
  }
  if (k2 == 0) throw ConfigError("k2 must be at least 1");
  if (!alpha.empty() && alpha.size() != k2) {
    throw ConfigError("alpha must have exactly k2 entries");
  }
}

bool ConstraintCheck(const SearchNode& candidate,
                     const TokenizedInput& original, double rho_max) {
  for (const Substitution& e : candidate.edits) {
    if (e.position >= original.size() ||
        !original.tokens[e.position].perturbable()) {
      return false;
    }
  }
  if (candidate.edits.empty()) return true;
  const std::size_t perturbable = original.PerturbableCount();
  if (perturbable == 0) return false;
  return static_cast<double>(candidate.edits.size()) /
             static_cast<double>(perturbable) <=
         rho_max;
}

Expansion Expand(const SearchNode& node, std::size_t position,
                 const TokenizedInput& original, const TransformSpace& space,
                 QueryLedger& ledger, const std::string& y,
                 const SearchConfig& config, std::uint64_t& next_seq) {
  Expansion ex;
  if (position >= space.per_position.size() || node.Edits(position)) return ex;

  for (const std::string& candidate : space.per_position[position]) {
    SearchNode child;
    child.edits = node.edits;
    Substitution sub{position, original.tokens[position].surface, candidate};
    child.edits.insert(
        std::upper_bound(child.edits.begin(), child.edits.end(), sub,
                         [](const Substitution& a, const Substitution& b) {
                           return a.position < b.position;
                         }),
        std::move(sub));
    if (!ConstraintCheck(child, original, config.rho_max)) continue;
    child.text = original.Render(child.edits);
    if (child.text.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    ThreatVerdict verdict;
    try {
      verdict = ledger.Classify(child.text);
    } catch (const BudgetExhausted&) {
      ex.budget_exhausted = true;
      break;
    }
    child.priority = verdict.Of(y);
    child.label = verdict.label;
    child.seq = next_seq++;
    ex.children.push_back(std::move(child));
  }
  return ex;
}

namespace {

class Runner {
 public:
  Runner(const TokenizedInput& original, const TransformSpace& space,
         QueryLedger& ledger, const std::string& y, const SearchConfig& config,
         SearchTrace* trace)
      : original_(original),
        space_(space),
        ledger_(ledger),
        y_(y),
        config_(config),
        trace_(trace),
        state_(config.k2, config.alpha),
        start_(std::chrono::steady_clock::now()) {
    config_.Validate();
    if (space_.per_position.size() != original_.size()) {
      throw std::invalid_argument("transform space does not match the input");
    }
  }

  // Scores the unmodified input. Returns false when it is already
  // misclassified and the search should be skipped.
  bool Start() {
    root_.text = original_.Render({});
    out_.original_verdict = ledger_.Classify(root_.text);
    root_.priority = out_.original_verdict.Of(y_);
    root_.label = out_.original_verdict.label;
    root_.seq = next_seq_++;
    best_ = root_;
    if (trace_) trace_->best_history.push_back(best_.priority);
    return root_.label == y_;
  }

  const SearchNode& root() const { return root_; }
  const SearchNode& best() const { return best_; }
  std::uint64_t& next_seq() { return next_seq_; }

  void Improve(const SearchNode& node) {
    best_ = node;
    if (trace_) trace_->best_history.push_back(best_.priority);
  }

  void NoteDequeue(const SearchNode& node) {
    ++out_.iterations;
    if (trace_) trace_->dequeued.push_back(node);
  }

  void NoteEnqueue(const SearchNode& node) {
    if (trace_) {
      trace_->enqueues.push_back({node.text, node.priority, best_.priority});
    }
  }

  // Positions of `node` in the order they should be substituted. Throws
  // BudgetExhausted from the deletion probes.
  std::vector<std::size_t> Rank(const SearchNode& node) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < original_.size(); ++i) {
      if (original_.tokens[i].perturbable() &&
          !space_.per_position[i].empty() && !node.Edits(i)) {
        positions.push_back(i);
      }
    }
    const ThreatVerdict verdict = *ledger_.Peek(node.text);
    auto probes = WirScores(original_, node, verdict, positions, ledger_, y_);

    std::vector<double> adjusted(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
      if (IsAdaptive(config_.strategy)) {
        state_.Record(probes[k].position, probes[k].delta);
        adjusted[k] = state_.Adjust(probes[k].position, probes[k].score);
      } else {
        adjusted[k] = probes[k].score;
      }
    }
    std::vector<std::size_t> idx(probes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return adjusted[a] > adjusted[b];
    });
    std::vector<std::size_t> order;
    order.reserve(idx.size());
    for (std::size_t k : idx) order.push_back(probes[k].position);

    if (trace_) {
      trace_->rankings.push_back(
          {node.text, std::move(probes), std::move(adjusted), order});
    }
    return order;
  }

  Expansion Expand(const SearchNode& node, std::size_t position) {
    return search::Expand(node, position, original_, space_, ledger_, y_,
                          config_, next_seq_);
  }

  // Lowest-confidence child whose label differs from y, if any.
  const SearchNode* FindFlip(const Expansion& ex) const {
    const SearchNode* flip = nullptr;
    for (const SearchNode& child : ex.children) {
      if (child.label != y_ && (!flip || child.priority < flip->priority)) {
        flip = &child;
      }
    }
    return flip;
  }

  SearchOutcome Finish(SearchStatus status, const SearchNode& best_case) {
    out_.status = status;
    out_.best_case = best_case;
    out_.final_verdict = *ledger_.Peek(best_case.text);
    out_.queries_used = ledger_.used();
    out_.wall_time = std::chrono::steady_clock::now() - start_;
    return out_;
  }

  QueryLedger& ledger() { return ledger_; }

 private:
  const TokenizedInput& original_;
  const TransformSpace& space_;
  QueryLedger& ledger_;
  const std::string& y_;
  const SearchConfig& config_;
  SearchTrace* trace_;
  WirState state_;
  std::chrono::steady_clock::time_point start_;
  SearchOutcome out_;
  SearchNode root_;
  SearchNode best_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace

SearchOutcome BestFirstSearch(const TokenizedInput& original,
                              const TransformSpace& space, QueryLedger& ledger,
                              const std::string& y, const SearchConfig& config,
                              SearchTrace* trace) {
  Runner run(original, space, ledger, y, config, trace);
  if (!run.Start()) return run.Finish(SearchStatus::kSkipped, run.root());

  NodeQueue queue;
  queue.Push(run.root());
  while (!queue.empty()) {
    if (ledger.exhausted()) {
      return run.Finish(SearchStatus::kBudgetExhausted, run.best());
    }
    const SearchNode current = queue.Pop();
    run.NoteDequeue(current);

    std::vector<std::size_t> order;
    try {
      order = run.Rank(current);
    } catch (const BudgetExhausted&) {
      return run.Finish(SearchStatus::kBudgetExhausted, run.best());
    }

    for (std::size_t position : order) {
      Expansion ex = run.Expand(current, position);
      // Every child below the best case as it stood before this position is
      // enqueued; the best case then moves to the lowest of them.
      const double threshold = run.best().priority;
      const SearchNode* lowest = nullptr;
      for (const SearchNode& child : ex.children) {
        if (child.priority < threshold) {
          run.NoteEnqueue(child);
          queue.Push(child);
          if (!lowest || child.priority < lowest->priority) lowest = &child;
        }
      }
      if (lowest) run.Improve(*lowest);
      // A flipping child ends the search even if it was not enqueued.
      if (const SearchNode* flip = run.FindFlip(ex)) {
        return run.Finish(SearchStatus::kSuccess, *flip);
      }
      if (ex.budget_exhausted) {
        return run.Finish(SearchStatus::kBudgetExhausted, run.best());
      }
    }
  }
  return run.Finish(SearchStatus::kQueueEmpty, run.best());
}

SearchOutcome GreedySearch(const TokenizedInput& original,
                           const TransformSpace& space, QueryLedger& ledger,
                           const std::string& y, const SearchConfig& config,
                           SearchTrace* trace) {
  Runner run(original, space, ledger, y, config, trace);
  if (!run.Start()) return run.Finish(SearchStatus::kSkipped, run.root());

  SearchNode current = run.root();
  while (true) {
    if (ledger.exhausted()) {
      return run.Finish(SearchStatus::kBudgetExhausted, run.best());
    }
    run.NoteDequeue(current);

    std::vector<std::size_t> order;
    try {
      order = run.Rank(current);
    } catch (const BudgetExhausted&) {
      return run.Finish(SearchStatus::kBudgetExhausted, run.best());
    }

    std::optional<SearchNode> step_best;
    bool exhausted = false;
    for (std::size_t position : order) {
      Expansion ex = run.Expand(current, position);
      for (const SearchNode& child : ex.children) {
        if (!step_best || child.priority < step_best->priority) {
          step_best = child;
        }
      }
      if (ex.budget_exhausted) {
        exhausted = true;
        break;
      }
    }

    // Siblings are discarded, flipping or not; only the committed node can
    // end the search.
    const bool improves =
        step_best && step_best->priority < current.priority;
    if (improves) {
      run.NoteEnqueue(*step_best);
      run.Improve(*step_best);
      current = *step_best;
      if (current.label != y) {
        return run.Finish(SearchStatus::kSuccess, current);
      }
    }
    if (exhausted) {
      return run.Finish(SearchStatus::kBudgetExhausted, run.best());
    }
    // Local optimum: nothing left that lowers the confidence.
    if (!improves) return run.Finish(SearchStatus::kQueueEmpty, run.best());
  }
}

SearchOutcome RunSearch(const TokenizedInput& original,
                        const TransformSpace& space, QueryLedger& ledger,
                        const std::string& y, const SearchConfig& config,
                        SearchTrace* trace) {
  if (IsBestFirst(config.strategy)) {
    return BestFirstSearch(original, space, ledger, y, config, trace);
  }
  return GreedySearch(original, space, ledger, y, config, trace);
}

}  // namespace abfs::search
