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

#ifndef ABFS_LEXICON_POS_TAGGER_HPP_
#define ABFS_LEXICON_POS_TAGGER_HPP_

#include "abfs/lexicon/stopwords.hpp"
#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/wordnet.hpp"

namespace abfs::lexicon {

// Rule tagger backed by lexicon membership. A word is a candidate for every
// part of speech whose index holds one of its base forms. Among candidates:
//   1. after "to" or a modal, prefer verb;
//   2. after a copula or intensifier, prefer adjective;
//   3. an "-ly" word prefers adverb, "-ing"/"-ed" prefer verb, and common
//      adjective suffixes prefer adjective;
//   4. otherwise noun > verb > adj > adv.
// Words with no candidate, numbers and punctuation are tagged other.
class PosTagger {
 public:
  explicit PosTagger(const SynsetLexicon& lexicon) : lexicon_(lexicon) {}

  // Sets pos and lemma on every token. Deterministic.
  void Tag(TokenizedInput& input) const;

 private:
  const SynsetLexicon& lexicon_;
};

// Tags `input` and sets stop-word/frozen flags. Prompt tokens are frozen when
// `freeze_prompt` is set.
void Annotate(TokenizedInput& input, const SynsetLexicon& lexicon,
              const StopWordSet& stopwords, bool freeze_prompt);

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_POS_TAGGER_HPP_
