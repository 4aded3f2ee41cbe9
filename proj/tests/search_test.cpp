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

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "abfs/common/rng.hpp"
#include "abfs/errors.hpp"
#include "abfs/search/node.hpp"
#include "abfs/search/search.hpp"
#include "abfs/search/wir.hpp"
#include "abfs/threat/query_ledger.hpp"
#include "abfs/threat/scripted.hpp"
#include "instances.hpp"

namespace abfs::search {
namespace {

using abfs::testing::Instance;
using abfs::testing::PlainInput;
using abfs::testing::RandomInstance;
using threat::CountingClassifier;
using threat::MakeVerdict;
using threat::QueryLedger;

constexpr Strategy kAll[] = {Strategy::kAbfs, Strategy::kBfsPlain,
                             Strategy::kGreedy, Strategy::kGreedyPlain};

TEST(NodeQueue, HeapLawAgainstSortedOracle) {
  Rng rng(8);
  NodeQueue q;
  std::set<std::pair<double, std::uint64_t>> oracle;
  std::uint64_t seq = 0;
  for (int step = 0; step < 5000; ++step) {
    if (oracle.empty() || rng.Below(3) != 0) {
      SearchNode n;
      n.priority = static_cast<double>(rng.Below(20)) / 20;  // many ties
      n.seq = seq++;
      oracle.emplace(n.priority, n.seq);
      q.Push(n);
    } else {
      const SearchNode n = q.Pop();
      ASSERT_EQ(std::make_pair(n.priority, n.seq), *oracle.begin());
      oracle.erase(oracle.begin());
    }
    ASSERT_EQ(q.size(), oracle.size());
  }
}

TEST(Wir, KeepCase) {
  const auto full = MakeVerdict({{"y", 0.9}, {"z", 0.1}});
  const auto del = MakeVerdict({{"y", 0.7}, {"z", 0.3}});
  EXPECT_NEAR(WirScore(full, del, "y"), 0.2, 1e-12);
  EXPECT_NEAR(ScoreDelta(full, del, "y"), 0.2, 1e-12);
}

TEST(Wir, FlipCase) {
  const auto full = MakeVerdict({{"y", 0.6}, {"z", 0.4}});
  const auto del = MakeVerdict({{"y", 0.3}, {"z", 0.7}});
  EXPECT_NEAR(WirScore(full, del, "y"), 0.6 + 0.7 - 0.3 - 0.4, 1e-12);
  EXPECT_NEAR(WirScore(full, del, "y"), 0.6, 1e-12);
  EXPECT_NEAR(ScoreDelta(full, del, "y"), 0.3, 1e-12);
}

TEST(Wir, WeightFreeTokenScoresZero) {
  threat::SurrogateSpec spec;
  spec.label_set = {"neg", "pos"};
  spec.weights["good"] = {{"pos", 1.5}};
  spec.weights["dull"] = {{"neg", 0.4}};
  threat::SurrogateClassifier model(spec);
  QueryLedger ledger(model, 100);
  const auto in = PlainInput("good plot dull");
  SearchNode node;
  node.text = in.Render({});
  const auto verdict = ledger.Classify(node.text);
  const std::vector<std::size_t> positions = {0, 1, 2};
  const auto probes =
      WirScores(in, node, verdict, positions, ledger, verdict.label);
  ASSERT_EQ(probes.size(), 3u);
  EXPECT_EQ(probes[1].deleted_text, "good dull");
  EXPECT_EQ(probes[1].score, 0.0);
  EXPECT_GT(probes[0].score, 0.0);
}

TEST(WirState, MeanOfAvailableRecords) {
  WirState s(5);
  s.Record(3, 0.1);
  s.Record(3, 0.2);
  s.Record(3, 0.3);
  EXPECT_NEAR(s.Adjust(3, 0.5), 0.7, 1e-12);
  EXPECT_EQ(s.Adjust(4, 0.4), 0.4);
}

TEST(WirState, KeepsMostRecentK2) {
  WirState s(5);
  for (double d : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}) s.Record(0, d);
  EXPECT_EQ(s.History(0), (std::vector<double>{0.3, 0.4, 0.5, 0.6, 0.7}));
  EXPECT_NEAR(s.Adjust(0, 0), (0.3 + 0.4 + 0.5 + 0.6 + 0.7) / 5, 1e-12);
  s.Record(0, 0.8);
  EXPECT_EQ(s.History(0), (std::vector<double>{0.4, 0.5, 0.6, 0.7, 0.8}));
  WirState fresh;
  fresh.Record(1, 0.3);
  EXPECT_EQ(fresh.History(1), std::vector<double>{0.3});
}

TEST(WirState, AlphaWeightsOldestFirst) {
  WirState s(3, {1.0, 2.0, 3.0});
  s.Record(0, 0.1);
  s.Record(0, 0.2);
  // Two records: alpha_1 * 0.1 + alpha_2 * 0.2 over m = 2.
  EXPECT_NEAR(s.Adjust(0, 1.0), 1.0 + (0.1 + 0.4) / 2, 1e-12);
  s.Record(0, 0.3);
  s.Record(0, 0.4);
  EXPECT_NEAR(s.Adjust(0, 0.0), (0.2 + 0.6 + 1.2) / 3, 1e-12);
}

TEST(Constraint, Boundaries) {
  const auto in = PlainInput("w0 w1 w2 w3 w4 w5 w6 w7 w8 w9 the");
  ASSERT_EQ(in.PerturbableCount(), 10u);
  SearchNode one;
  one.edits = {{0, "w0", "x"}};
  EXPECT_TRUE(ConstraintCheck(one, in, 0.10));
  SearchNode two;
  two.edits = {{0, "w0", "x"}, {1, "w1", "y"}};
  EXPECT_FALSE(ConstraintCheck(two, in, 0.10));
  SearchNode stop;
  stop.edits = {{10, "the", "a"}};
  EXPECT_FALSE(ConstraintCheck(stop, in, 1.0));
}

TEST(Expand, OneChildPerCandidate) {
  auto counting = std::make_shared<CountingClassifier>(
      std::make_shared<threat::ConstantClassifier>(
          std::vector<std::string>{"neg", "pos"}, "pos"));
  QueryLedger ledger(*counting, 100);
  const auto in = PlainInput("good movie");
  lexicon::TransformSpace space;
  space.per_position = {{"fine", "nice", "great"}, {}};
  SearchConfig cfg;
  cfg.rho_max = 1.0;
  SearchNode root;
  root.text = in.Render({});
  std::uint64_t seq = 0;

  auto ex = Expand(root, 0, in, space, ledger, "pos", cfg, seq);
  ASSERT_EQ(ex.children.size(), 3u);
  EXPECT_EQ(ex.children[2].text, "great movie");
  EXPECT_EQ(ledger.used(), 3u);

  ex = Expand(root, 0, in, space, ledger, "pos", cfg, seq);
  EXPECT_EQ(ex.children.size(), 3u);
  EXPECT_EQ(counting->total_calls(), 3u);

  EXPECT_TRUE(Expand(root, 1, in, space, ledger, "pos", cfg, seq).children.empty());
}

TEST(Expand, BudgetMidExpansionKeepsScoredChildren) {
  threat::ConstantClassifier model({"neg", "pos"}, "pos");
  QueryLedger ledger(model, 2);
  const auto in = PlainInput("good movie");
  lexicon::TransformSpace space;
  space.per_position = {{"fine", "nice", "great"}, {}};
  SearchConfig cfg;
  cfg.rho_max = 1.0;
  SearchNode root;
  std::uint64_t seq = 0;
  const auto ex = Expand(root, 0, in, space, ledger, "pos", cfg, seq);
  EXPECT_TRUE(ex.budget_exhausted);
  EXPECT_EQ(ex.children.size(), 2u);
}

TEST(Search, MisclassifiedOriginalIsSkipped) {
  threat::ConstantClassifier model({"neg", "pos"}, "neg");
  const auto in = PlainInput("good movie");
  lexicon::TransformSpace space;
  space.per_position = {{"fine"}, {"film"}};
  for (Strategy s : kAll) {
    QueryLedger ledger(model, 100);
    SearchConfig cfg;
    cfg.strategy = s;
    const auto out = RunSearch(in, space, ledger, "pos", cfg);
    EXPECT_EQ(out.status, SearchStatus::kSkipped);
    EXPECT_EQ(out.queries_used, 1u);
  }
}

TEST(Search, GreedyTrapStallsBestFirstSucceeds) {
  const auto f = abfs::testing::MakeGreedyTrap();
  SearchConfig cfg;
  cfg.rho_max = 1.0;
  for (Strategy s : kAll) {
    QueryLedger ledger(*f.model, 100);
    cfg.strategy = s;
    const auto out = RunSearch(f.input, f.space, ledger, f.y, cfg);
    if (IsBestFirst(s)) {
      EXPECT_EQ(out.status, SearchStatus::kSuccess);
      EXPECT_EQ(out.best_case.text, "a1 bravo c1");
      EXPECT_EQ(out.best_case.priority, 0.497);
    } else {
      EXPECT_EQ(out.status, SearchStatus::kQueueEmpty);
      EXPECT_EQ(out.best_case.text, "a1 b1 charlie");
      EXPECT_EQ(out.best_case.priority, 0.714);
    }
  }
}

TEST(Search, BudgetStatusAndBound) {
  const Instance inst = RandomInstance(77);
  for (Strategy s : kAll) {
    QueryLedger ledger(*inst.model, 5);
    SearchConfig cfg;
    cfg.strategy = s;
    cfg.max_query = 5;
    const auto out = RunSearch(inst.input, inst.space, ledger, inst.y, cfg);
    EXPECT_LE(out.queries_used, 5u);
    if (out.status != SearchStatus::kSuccess) {
      EXPECT_EQ(out.status, SearchStatus::kBudgetExhausted);
    }
  }
}

// Search invariants checked on seeded random instances for every strategy.
TEST(SearchProperty, InvariantsOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = RandomInstance(seed, 10 + seed % 6);
    for (Strategy s : kAll) {
      SearchConfig cfg;
      cfg.strategy = s;
      cfg.rho_max = seed % 2 ? 0.25 : 0.10;
      cfg.max_query = seed % 3 ? 3000 : 40;
      auto counting = std::make_shared<CountingClassifier>(inst.model);
      QueryLedger ledger(*counting, cfg.max_query);
      SearchTrace trace;
      const auto out =
          RunSearch(inst.input, inst.space, ledger, inst.y, cfg, &trace);
      SCOPED_TRACE("seed " + std::to_string(seed) + " " +
                   std::string(ToString(s)));

      // Budget exactness and the no-duplicate guarantee.
      ASSERT_EQ(out.queries_used, ledger.used());
      ASSERT_EQ(counting->total_calls(), ledger.used());
      ASSERT_TRUE(counting->Duplicates().empty());
      ASSERT_LE(out.queries_used, cfg.max_query);

      // Constraint safety and the success contract.
      ASSERT_TRUE(ConstraintCheck(out.best_case, inst.input, cfg.rho_max));
      ASSERT_EQ(out.best_case.text, inst.input.Render(out.best_case.edits));
      if (out.status == SearchStatus::kSuccess) {
        ASSERT_NE(out.final_verdict.label, inst.y);
        ASSERT_EQ(inst.model->Classify(out.best_case.text), out.final_verdict);
      }

      // Monotone best case and the enqueue filter.
      for (std::size_t i = 1; i < trace.best_history.size(); ++i) {
        ASSERT_LE(trace.best_history[i], trace.best_history[i - 1]);
      }
      for (const auto& e : trace.enqueues) ASSERT_LT(e.priority, e.best_before);

      // WIR replay from the query cache.
      for (const auto& r : trace.rankings) {
        const auto full = ledger.Peek(r.node_text);
        ASSERT_TRUE(full);
        for (const auto& p : r.probes) {
          const auto del = ledger.Peek(p.deleted_text);
          if (!del) {
            // All-whitespace probes are never sent; they score C(I, y).
            ASSERT_EQ(p.score, full->Of(inst.y));
            continue;
          }
          ASSERT_EQ(p.score, WirScore(*full, *del, inst.y));
          ASSERT_EQ(p.delta, ScoreDelta(*full, *del, inst.y));
        }
      }

      // Determinism.
      QueryLedger again(*inst.model, cfg.max_query);
      const auto out2 = RunSearch(inst.input, inst.space, again, inst.y, cfg);
      ASSERT_EQ(out2.status, out.status);
      ASSERT_EQ(out2.best_case.text, out.best_case.text);
      ASSERT_EQ(out2.best_case.edits, out.best_case.edits);
      ASSERT_EQ(out2.best_case.priority, out.best_case.priority);
      ASSERT_EQ(out2.queries_used, out.queries_used);
      ASSERT_EQ(out2.iterations, out.iterations);
    }
  }
}

TEST(SearchProperty, RankingOrderFollowsAdjustedScores) {
  const Instance inst = RandomInstance(5);
  for (Strategy s : kAll) {
    SearchConfig cfg;
    cfg.strategy = s;
    cfg.rho_max = 0.3;
    QueryLedger ledger(*inst.model, 3000);
    SearchTrace trace;
    RunSearch(inst.input, inst.space, ledger, inst.y, cfg, &trace);
    for (const auto& r : trace.rankings) {
      std::map<std::size_t, double> by_pos;
      for (std::size_t k = 0; k < r.probes.size(); ++k) {
        by_pos[r.probes[k].position] = r.adjusted[k];
        if (!IsAdaptive(s)) EXPECT_EQ(r.adjusted[k], r.probes[k].score);
      }
      for (std::size_t k = 1; k < r.order.size(); ++k) {
        EXPECT_GE(by_pos[r.order[k - 1]], by_pos[r.order[k]]);
      }
    }
  }
}

// With a legal one-edit flip and enough budget for the first iteration, every
// strategy succeeds on a binary model: the flipping child has the lowest
// ground-truth confidence, so greedy commits to it as well.
TEST(SearchProperty, SingleSubstitutionCompleteness) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1000; checked < 40; ++seed) {
    const Instance inst = RandomInstance(seed);
    if (abfs::testing::CountSingleFlips(inst) == 0) continue;
    ++checked;
    for (Strategy s : kAll) {
      SearchConfig cfg;
      cfg.strategy = s;
      cfg.max_query =
          inst.input.size() + 1 + abfs::testing::TotalCandidates(inst);
      QueryLedger ledger(*inst.model, cfg.max_query);
      const auto out = RunSearch(inst.input, inst.space, ledger, inst.y, cfg);
      EXPECT_EQ(out.status, SearchStatus::kSuccess) << seed;
      EXPECT_EQ(out.best_case.edits.size(), 1u) << seed;
    }
  }
}

TEST(SearchConfig, Validation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.rho_max = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg.rho_max = 0.1;
  cfg.alpha = {1, 1};
  EXPECT_THROW(cfg.Validate(), ConfigError);
  EXPECT_EQ(ParseStrategy("greedy_plain"), Strategy::kGreedyPlain);
  EXPECT_FALSE(ParseStrategy("beam"));
}

}  // namespace
}  // namespace abfs::search
