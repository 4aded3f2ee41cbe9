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

#include "abfs/lexicon/transform_space.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "abfs/common/rng.hpp"

namespace abfs::lexicon {
namespace {

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool HasLetter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return IsAsciiLetter(c) || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool IsAscii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80;
  });
}

// A replacement must stay one token so token counts do not drift.
bool IsSingleWord(std::string_view candidate) {
  if (candidate.empty()) return false;
  auto tokens = Tokenize(candidate);
  return tokens.size() == 1 && !tokens.tokens[0].is_punct &&
         tokens.tokens[0].surface.size() == candidate.size();
}

std::string MatchCase(std::string_view original, std::string word) {
  const bool all_upper =
      original.size() > 1 &&
      std::all_of(original.begin(), original.end(), [](char c) {
        return !IsAsciiLetter(c) || (c >= 'A' && c <= 'Z');
      }) &&
      HasLetter(original);
  if (all_upper) {
    for (char& c : word) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z' &&
             !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

class CandidateList {
 public:
  CandidateList(const Token& tok, std::size_t k1)
      : original_(tok.surface), k1_(k1) {
    seen_.insert(ToLower(tok.surface));
  }

  bool full() const { return out_.size() >= k1_; }

  // Case-insensitive duplicate check against the original and earlier picks.
  void Offer(std::string candidate, bool match_case = true) {
    if (full()) return;
    if (match_case) candidate = MatchCase(original_, std::move(candidate));
    if (seen_.insert(ToLower(candidate)).second) {
      out_.push_back(std::move(candidate));
    }
  }

  std::vector<std::string> Take() { return std::move(out_); }

 private:
  std::string original_;
  std::size_t k1_;
  std::unordered_set<std::string> seen_;
  std::vector<std::string> out_;
};

std::vector<std::string> WordNetCandidates(const Token& tok,
                                           const SynsetLexicon& lexicon,
                                           const EmbeddingTable* embeddings,
                                           std::size_t k1) {
  if (tok.pos == Pos::kOther || tok.lemma.empty()) return {};
  const std::string lower = ToLower(tok.surface);

  std::vector<std::string> synonyms;
  for (std::string& s : lexicon.Synonyms(tok.lemma, tok.pos)) {
    if (s != lower && IsSingleWord(s)) synonyms.push_back(std::move(s));
  }

  std::vector<std::optional<double>> sim(synonyms.size());
  if (embeddings != nullptr) {
    const std::string_view anchor =
        embeddings->Contains(lower) ? std::string_view(lower)
                                    : std::string_view(tok.lemma);
    for (std::size_t i = 0; i < synonyms.size(); ++i) {
      sim[i] = embeddings->Similarity(anchor, synonyms[i]);
    }
  }
  // Ranked candidates by similarity, then unranked ones in lexicon order.
  std::vector<std::size_t> order(synonyms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (sim[a].has_value() != sim[b].has_value()) {
                       return sim[a].has_value();
                     }
                     return sim[a].has_value() && *sim[a] > *sim[b];
                   });

  CandidateList list(tok, k1);
  for (std::size_t i : order) list.Offer(synonyms[i]);
  return list.Take();
}

std::vector<std::string> EmbeddingCandidates(const Token& tok,
                                             const EmbeddingTable* embeddings,
                                             std::size_t k1) {
  if (embeddings == nullptr || !HasLetter(tok.surface)) return {};
  CandidateList list(tok, k1);
  // Over-fetch so filtered neighbours do not leave the list short.
  for (auto& [word, score] : embeddings->Nearest(ToLower(tok.surface), 2 * k1)) {
    if (IsSingleWord(word)) list.Offer(word);
  }
  return list.Take();
}

std::vector<std::string> RandomWordCandidates(
    const Token& tok, const std::vector<std::string>& vocabulary,
    std::size_t k1, Rng& rng) {
  if (vocabulary.empty() || !HasLetter(tok.surface)) return {};
  CandidateList list(tok, k1);
  for (std::size_t attempt = 0; attempt < 8 * k1 && !list.full(); ++attempt) {
    const std::string& word = vocabulary[rng.Below(vocabulary.size())];
    switch (rng.Below(3)) {
      case 0:
        list.Offer(tok.surface + " " + word, /*match_case=*/false);
        break;
      case 1:
        list.Offer("", /*match_case=*/false);
        break;
      default:
        list.Offer(word);
        break;
    }
  }
  return list.Take();
}

std::vector<std::string> RandomCharCandidates(const Token& tok, std::size_t k1,
                                              Rng& rng) {
  const std::string& s = tok.surface;
  if (!HasLetter(s) || !IsAscii(s)) return {};
  CandidateList list(tok, k1);
  const auto letter = [&] { return static_cast<char>('a' + rng.Below(26)); };
  for (std::size_t attempt = 0; attempt < 8 * k1 && !list.full(); ++attempt) {
    std::string v = s;
    switch (rng.Below(3)) {
      case 0:
        v.insert(v.begin() + static_cast<long>(rng.Below(s.size() + 1)),
                 letter());
        break;
      case 1:
        if (s.size() < 2) continue;
        v.erase(v.begin() + static_cast<long>(rng.Below(s.size())));
        break;
      default: {
        const std::size_t at = rng.Below(s.size());
        char c = letter();
        if (c == ToLower(std::string(1, s[at]))[0]) c = c == 'z' ? 'a' : c + 1;
        v[at] = c;
        break;
      }
    }
    list.Offer(std::move(v), /*match_case=*/false);
  }
  return list.Take();
}

}  // namespace

std::string_view ToString(Provider p) {
  switch (p) {
    case Provider::kWordNet:
      return "wordnet";
    case Provider::kEmbedding:
      return "embedding";
    case Provider::kRandomWord:
      return "random_word";
    case Provider::kRandomChar:
      return "random_char";
  }
  return "wordnet";
}

std::optional<Provider> ParseProvider(std::string_view name) {
  for (Provider p : {Provider::kWordNet, Provider::kEmbedding,
                     Provider::kRandomWord, Provider::kRandomChar}) {
    if (ToString(p) == name) return p;
  }
  return std::nullopt;
}

std::size_t TransformSpace::TotalCandidates() const {
  std::size_t n = 0;
  for (const auto& c : per_position) n += c.size();
  return n;
}

TransformSpace BuildTransformSpace(const TokenizedInput& input,
                                   const SynsetLexicon& lexicon,
                                   const EmbeddingTable* embeddings,
                                   const LexiconConfig& config,
                                   Provider provider, std::uint64_t seed) {
  if (config.k1 == 0) throw ConfigError("k1 must be at least 1");

  TransformSpace space;
  space.provider = provider;
  space.per_position.resize(input.size());

  const std::vector<std::string>* vocabulary = &lexicon.Vocabulary();
  std::vector<std::string> embedding_vocabulary;
  if (provider == Provider::kRandomWord && vocabulary->empty() &&
      embeddings != nullptr) {
    embedding_vocabulary = embeddings->words();
    std::sort(embedding_vocabulary.begin(), embedding_vocabulary.end());
    vocabulary = &embedding_vocabulary;
  }

  for (std::size_t i = 0; i < input.size(); ++i) {
    const Token& tok = input.tokens[i];
    if (!tok.perturbable()) continue;
    Rng rng(MixSeed(seed, MixSeed(i, Fnv1a64(tok.surface))));
    auto& out = space.per_position[i];
    switch (provider) {
      case Provider::kWordNet:
        out = WordNetCandidates(tok, lexicon, embeddings, config.k1);
        break;
      case Provider::kEmbedding:
        out = EmbeddingCandidates(tok, embeddings, config.k1);
        break;
      case Provider::kRandomWord:
        out = RandomWordCandidates(tok, *vocabulary, config.k1, rng);
        break;
      case Provider::kRandomChar:
        out = RandomCharCandidates(tok, config.k1, rng);
        break;
    }
  }
  return space;
}

}  // namespace abfs::lexicon
