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

// The transformation space: for every token position, the replacement
// surfaces the search may try there. It is the edge set of the search graph.

#ifndef ABFS_LEXICON_TRANSFORM_SPACE_HPP_
#define ABFS_LEXICON_TRANSFORM_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abfs/lexicon/embeddings.hpp"
#include "abfs/lexicon/stopwords.hpp"
#include "abfs/lexicon/tokenizer.hpp"
#include "abfs/lexicon/wordnet.hpp"

namespace abfs::lexicon {

enum class Provider { kWordNet, kEmbedding, kRandomWord, kRandomChar };

std::string_view ToString(Provider p);
std::optional<Provider> ParseProvider(std::string_view name);

struct LexiconConfig {
  std::size_t k1 = 25;
  std::filesystem::path wordnet_dir;
  std::optional<std::filesystem::path> embeddings_path;
  StopWordSet stopwords = StopWordSet::English();
  bool freeze_prompt = true;
};

struct TransformSpace {
  Provider provider = Provider::kWordNet;
  std::vector<std::vector<std::string>> per_position;

  std::size_t TotalCandidates() const;
};

// Builds candidate lists for an annotated input. Stop-word and frozen
// positions always get an empty list.
//
//   wordnet     synonyms of (lemma, pos), single-word only, ranked by cosine
//               to the original word; candidates without an embedding follow
//               in lexicon order. Truncated to k1.
//   embedding   the k1 nearest neighbours of the lowercase word.
//   random_word insertion of, replacement by, or deletion of random
//               vocabulary words (deletion is the empty replacement).
//   random_char random character insertion, deletion and replacement.
//
// Replacements copy the capitalisation of the original word. The random
// providers are a pure function of (seed, position, surface).
TransformSpace BuildTransformSpace(const TokenizedInput& input,
                                   const SynsetLexicon& lexicon,
                                   const EmbeddingTable* embeddings,
                                   const LexiconConfig& config,
                                   Provider provider, std::uint64_t seed = 0);

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_TRANSFORM_SPACE_HPP_
