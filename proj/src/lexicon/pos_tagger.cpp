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

#include "abfs/lexicon/pos_tagger.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

namespace abfs::lexicon {
namespace {

constexpr std::array kTieBreak = {Pos::kNoun, Pos::kVerb, Pos::kAdj, Pos::kAdv};

constexpr std::string_view kVerbCues[] = {
    "to",     "will",  "would", "can",  "could", "shall", "should",
    "may",    "might", "must",  "does", "did",   "do",    "don't",
    "didn't", "won't", "can't",
};

constexpr std::string_view kAdjCues[] = {
    "is",   "are",   "was",  "were",      "be",         "been",  "being",
    "am",   "seems", "seem", "seemed",    "very",       "too",   "so",
    "more", "most",  "less", "extremely", "incredibly", "quite", "rather",
};

constexpr std::string_view kAdjSuffixes[] = {
    "ous", "ful", "ive", "able", "ible", "less", "ical", "ish",
};

bool OneOf(std::string_view word, std::span<const std::string_view> list) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

bool HasLetter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           static_cast<unsigned char>(c) >= 0x80;
  });
}

struct Candidates {
  std::array<std::string, 4> base;  // indexed like kTieBreak; "" = absent

  bool Has(Pos p) const { return !base[static_cast<int>(p)].empty(); }
  bool Any() const {
    return std::any_of(base.begin(), base.end(),
                       [](const std::string& b) { return !b.empty(); });
  }
};

std::optional<Pos> SuffixPreference(std::string_view lower,
                                    const Candidates& c) {
  if (lower.ends_with("ly") && c.Has(Pos::kAdv)) return Pos::kAdv;
  if ((lower.ends_with("ing") || lower.ends_with("ed")) && c.Has(Pos::kVerb)) {
    return Pos::kVerb;
  }
  for (std::string_view s : kAdjSuffixes) {
    if (lower.ends_with(s) && c.Has(Pos::kAdj)) return Pos::kAdj;
  }
  return std::nullopt;
}

}  // namespace

void PosTagger::Tag(TokenizedInput& input) const {
  std::string previous;  // lowercase surface of the previous word token
  for (Token& tok : input.tokens) {
    tok.pos = Pos::kOther;
    tok.lemma.clear();
    if (tok.is_punct || !HasLetter(tok.surface)) {
      if (!tok.is_punct) previous = ToLower(tok.surface);
      continue;
    }
    const std::string lower = ToLower(tok.surface);

    Candidates cand;
    for (Pos p : kTieBreak) {
      cand.base[static_cast<int>(p)] = lexicon_.BaseForm(lower, p);
    }
    if (cand.Any()) {
      std::optional<Pos> chosen;
      if (OneOf(previous, kVerbCues) && cand.Has(Pos::kVerb)) {
        chosen = Pos::kVerb;
      } else if (OneOf(previous, kAdjCues) && cand.Has(Pos::kAdj)) {
        chosen = Pos::kAdj;
      } else {
        chosen = SuffixPreference(lower, cand);
      }
      if (!chosen) {
        for (Pos p : kTieBreak) {
          if (cand.Has(p)) {
            chosen = p;
            break;
          }
        }
      }
      tok.pos = *chosen;
      tok.lemma = cand.base[static_cast<int>(*chosen)];
    }
    previous = lower;
  }
}

void Annotate(TokenizedInput& input, const SynsetLexicon& lexicon,
              const StopWordSet& stopwords, bool freeze_prompt) {
  PosTagger(lexicon).Tag(input);
  for (std::size_t i = 0; i < input.tokens.size(); ++i) {
    Token& tok = input.tokens[i];
    tok.is_stopword = tok.is_punct || stopwords.Contains(tok.surface);
    tok.is_frozen = freeze_prompt && i < input.prompt_len;
  }
}

}  // namespace abfs::lexicon
