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

// Synonym lexicon in the shape of the Princeton WordNet database: lemmas are
// indexed per part of speech and point at synsets, each synset being a list
// of lemmas that share one sense.

#ifndef ABFS_LEXICON_WORDNET_HPP_
#define ABFS_LEXICON_WORDNET_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abfs/lexicon/tokenizer.hpp"

namespace abfs::lexicon {

using SynsetId = std::size_t;

struct Synset {
  Pos pos = Pos::kOther;
  std::vector<std::string> lemmas;  // lowercase, underscores kept
  std::vector<SynsetId> similar;    // adjective similar-to links
};

class SynsetLexicon {
 public:
  // Adds a synset and indexes every lemma in it under `pos` (appended after
  // any senses the lemma already has). Returns the new id.
  SynsetId AddSynset(Pos pos, std::vector<std::string> lemmas);

  void AddSimilar(SynsetId from, SynsetId to);

  // Overrides the sense order for (lemma, pos); used by the index-file reader.
  void SetSenses(std::string_view lemma, Pos pos, std::vector<SynsetId> ids);

  // Irregular inflections (e.g. "went" -> "go") consulted by BaseForm.
  void AddException(Pos pos, std::string_view inflected,
                    std::string_view base);

  bool Contains(std::string_view lemma, Pos pos) const;

  // Synsets of (lemma, pos) in sense order. Empty when absent.
  std::span<const SynsetId> Senses(std::string_view lemma, Pos pos) const;

  const Synset& synset(SynsetId id) const { return synsets_.at(id); }

  // Synonym groups for (lemma, pos): one group per sense in sense order, and
  // for adjectives one further group per similar-to satellite or head.
  std::vector<std::vector<std::string>> SynonymGroups(std::string_view lemma,
                                                      Pos pos) const;

  // SynonymGroups flattened, first occurrence kept, lemma itself removed.
  std::vector<std::string> Synonyms(std::string_view lemma, Pos pos) const;

  // Lemma that `word` inflects from under `pos`, or "" when no base form of
  // the word is indexed. Follows the WordNet morphy rules.
  std::string BaseForm(std::string_view word, Pos pos) const;

  // All single-word lemmas, sorted and unique. Computed once per lexicon
  // state; safe to call concurrently.
  const std::vector<std::string>& Vocabulary() const;

  std::size_t synset_count() const { return synsets_.size(); }
  std::size_t entry_count() const { return index_.size(); }

 private:
  static std::string Key(std::string_view lemma, Pos pos);

  std::vector<Synset> synsets_;
  std::unordered_map<std::string, std::vector<SynsetId>> index_;
  std::unordered_map<std::string, std::string> exceptions_;

  struct VocabularyCache {
    std::once_flag once;
    std::vector<std::string> words;
  };
  mutable std::shared_ptr<VocabularyCache> vocabulary_ =
      std::make_shared<VocabularyCache>();
};

// Reads index.{noun,verb,adj,adv} and data.{noun,verb,adj,adv} (WordNet 3.x)
// plus the optional *.exc morphology exception lists. Throws
// LexiconParseError naming the file and line on malformed input.
SynsetLexicon LoadWordNet(const std::filesystem::path& dir);

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_WORDNET_HPP_
