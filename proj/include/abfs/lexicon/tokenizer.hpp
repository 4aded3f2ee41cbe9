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

// Reversible word/punctuation tokenizer. Every token keeps the byte span it
// came from, so any set of substitutions can be re-inserted into the source
// text without disturbing the separators around it.

#ifndef ABFS_LEXICON_TOKENIZER_HPP_
#define ABFS_LEXICON_TOKENIZER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abfs::lexicon {

enum class Pos { kNoun, kVerb, kAdj, kAdv, kOther };

std::string_view ToString(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

struct Token {
  std::string surface;
  std::size_t begin = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive
  Pos pos = Pos::kOther;
  bool is_punct = false;
  bool is_stopword = false;
  bool is_frozen = false;
  std::string lemma;  // lowercase base form; filled by the tagger

  bool perturbable() const { return !is_stopword && !is_frozen; }
};

// One word replaced at one token position.
struct Substitution {
  std::size_t position = 0;
  std::string original;
  std::string replacement;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct TokenizedInput {
  std::string source;
  std::vector<Token> tokens;
  std::size_t prompt_len = 0;  // leading tokens that belong to the prompt

  std::size_t size() const { return tokens.size(); }

  // Source text rebuilt from the token spans and the gaps between them.
  std::string Detokenize() const;

  // Source text with `subs` applied. Positions must be distinct and in range.
  std::string Render(std::span<const Substitution> subs) const;

  // Render(subs) with token `position` and the separator after it removed.
  std::string RenderWithout(std::size_t position,
                            std::span<const Substitution> subs) const;

  std::size_t PerturbableCount() const;
};

// Splits on whitespace and punctuation. Runs of letters, digits, '_' and
// non-ASCII bytes form words; an apostrophe between two word characters stays
// inside the word. Every other non-space byte is its own punctuation token.
// Tokens starting before `prompt_bytes` are counted as prompt tokens.
// Throws EmptyInput for "".
TokenizedInput Tokenize(std::string_view text, std::size_t prompt_bytes = 0);

std::string ToLower(std::string_view s);

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_TOKENIZER_HPP_
