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

// Seeded surrogate instances for the search tests: a binary bag-of-words
// model, an input it classifies correctly and a hand-built substitution
// space.

#ifndef ABFS_TESTS_INSTANCES_HPP_
#define ABFS_TESTS_INSTANCES_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "abfs/common/rng.hpp"
#include "abfs/lexicon/pos_tagger.hpp"
#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/transform_space.hpp"
#include "abfs/lexicon/wordnet.hpp"
#include "abfs/search/node.hpp"
#include "abfs/threat/scripted.hpp"
#include "abfs/threat/surrogate.hpp"

namespace abfs::testing {

struct Instance {
  std::shared_ptr<threat::SurrogateClassifier> model;
  lexicon::TokenizedInput input;
  lexicon::TransformSpace space;
  std::string y;
};

// Tokenizes and flags stop words; no lexicon is needed for hand-built spaces.
inline lexicon::TokenizedInput PlainInput(const std::string& text) {
  auto in = lexicon::Tokenize(text);
  lexicon::Annotate(in, lexicon::SynsetLexicon{},
                    lexicon::StopWordSet::English(), false);
  return in;
}

// Draws one instance. `words` content words are mixed with a few stop words;
// every content position gets 1 to 4 candidates.
inline Instance RandomInstance(std::uint64_t seed, std::size_t words = 12) {
  Rng rng(seed);
  threat::SurrogateSpec spec;
  spec.label_set = {"neg", "pos"};
  const auto weight = [&] { return rng.Unit() * 2 - 1; };
  for (int i = 0; i < 30; ++i) {
    spec.weights["t" + std::to_string(i)] = {{"neg", weight()}, {"pos", weight()}};
  }
  for (int i = 0; i < 60; ++i) {
    spec.weights["c" + std::to_string(i)] = {{"neg", 2 * weight()},
                                             {"pos", 2 * weight()}};
  }
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) text += ' ';
    if (rng.Below(5) == 0) text += "the ";
    text += "t" + std::to_string(rng.Below(30));
  }
  text += ".";

  Instance inst;
  inst.model = std::make_shared<threat::SurrogateClassifier>(spec);
  inst.input = PlainInput(text);
  inst.space.per_position.resize(inst.input.size());
  for (std::size_t i = 0; i < inst.input.size(); ++i) {
    if (!inst.input.tokens[i].perturbable()) continue;
    const std::size_t k = 1 + rng.Below(4);
    auto& list = inst.space.per_position[i];
    while (list.size() < k) {
      std::string c = "c" + std::to_string(rng.Below(60));
      if (std::find(list.begin(), list.end(), c) == list.end()) {
        list.push_back(std::move(c));
      }
    }
  }
  inst.y = inst.model->Classify(inst.input.Render({})).label;
  return inst;
}

// Every one-edit variant, classified directly by the model. Returns the
// number of variants whose label differs from y.
inline std::size_t CountSingleFlips(const Instance& inst) {
  std::size_t flips = 0;
  for (std::size_t i = 0; i < inst.space.per_position.size(); ++i) {
    for (const auto& c : inst.space.per_position[i]) {
      const lexicon::Substitution sub{i, inst.input.tokens[i].surface, c};
      if (inst.model->Classify(inst.input.Render({&sub, 1})).label != inst.y) {
        ++flips;
      }
    }
  }
  return flips;
}

inline std::size_t TotalCandidates(const Instance& inst) {
  std::size_t n = 0;
  for (const auto& l : inst.space.per_position) n += l.size();
  return n;
}

// Three words, one candidate each, with the confidences of the ground-truth
// label scripted per text:
//
//   root 0.90   {a}   0.85   {b}   0.80   {c}   0.95
//   {a,b} 0.714 {b,c} 0.76   {a,c} 0.497  {a,b,c} 0.80
//
// Deleting a word gives 0.6 / 0.7 / 0.8, so words are tried in order a, b, c.
// Steepest descent goes root -> {b} -> {a,b} and stops at 0.714; the flip
// {a,c} sits under {a}.
struct GreedyTrap {
  std::shared_ptr<threat::ScriptedClassifier> model;
  lexicon::TokenizedInput input;
  lexicon::TransformSpace space;
  std::string y = "pos";
};

inline GreedyTrap MakeGreedyTrap() {
  GreedyTrap f;
  f.model = std::make_shared<threat::ScriptedClassifier>(
      std::vector<std::string>{"neg", "pos"},
      threat::ConfidenceMap{{"pos", 0.9}, {"neg", 0.1}});
  auto& m = *f.model;
  m.ScriptBinary("alpha bravo charlie", "pos", 0.9);
  m.ScriptBinary("a1 bravo charlie", "pos", 0.85);
  m.ScriptBinary("alpha b1 charlie", "pos", 0.80);
  m.ScriptBinary("alpha bravo c1", "pos", 0.95);
  m.ScriptBinary("a1 b1 charlie", "pos", 0.714);
  m.ScriptBinary("alpha b1 c1", "pos", 0.76);
  m.ScriptBinary("a1 bravo c1", "pos", 0.497);
  m.ScriptBinary("a1 b1 c1", "pos", 0.80);
  m.ScriptBinary("bravo charlie", "pos", 0.6);
  m.ScriptBinary("alpha charlie", "pos", 0.7);
  m.ScriptBinary("alpha bravo", "pos", 0.8);
  f.input = PlainInput("alpha bravo charlie");
  f.space.per_position = {{"a1"}, {"b1"}, {"c1"}};
  return f;
}

}  // namespace abfs::testing

#endif  // ABFS_TESTS_INSTANCES_HPP_
