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

#include "abfs/lexicon/tokenizer.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "abfs/errors.hpp"

namespace abfs::lexicon {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c >= 0x80;
}

// Walks tokens in order, emitting the text between them and letting the
// caller decide what each token turns into.
template <typename Emit>
std::string Rebuild(const TokenizedInput& input, Emit&& emit) {
  std::string out;
  out.reserve(input.source.size() + 16);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < input.tokens.size(); ++i) {
    const Token& t = input.tokens[i];
    out.append(input.source, cursor, t.begin - cursor);
    emit(out, i, t);
    cursor = t.end;
  }
  out.append(input.source, cursor, std::string::npos);
  return out;
}

std::vector<const Substitution*> IndexSubs(const TokenizedInput& input,
                                           std::span<const Substitution> subs) {
  std::vector<const Substitution*> by_pos(input.tokens.size(), nullptr);
  for (const Substitution& s : subs) {
    if (s.position >= by_pos.size()) {
      throw std::out_of_range("substitution position out of range");
    }
    assert(by_pos[s.position] == nullptr && "duplicate substitution position");
    by_pos[s.position] = &s;
  }
  return by_pos;
}

}  // namespace

std::string_view ToString(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return "noun";
    case Pos::kVerb:
      return "verb";
    case Pos::kAdj:
      return "adj";
    case Pos::kAdv:
      return "adv";
    case Pos::kOther:
      return "other";
  }
  return "other";
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (Pos p : {Pos::kNoun, Pos::kVerb, Pos::kAdj, Pos::kAdv, Pos::kOther}) {
    if (ToString(p) == name) return p;
  }
  return std::nullopt;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

TokenizedInput Tokenize(std::string_view text, std::size_t prompt_bytes) {
  if (text.empty()) throw EmptyInput();

  TokenizedInput input;
  input.source = std::string(text);
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };

  std::size_t i = 0;
  while (i < text.size()) {
    if (IsSpace(byte(i))) {
      ++i;
      continue;
    }
    Token tok;
    tok.begin = i;
    if (IsWordByte(byte(i))) {
      while (i < text.size()) {
        if (IsWordByte(byte(i))) {
          ++i;
        } else if (text[i] == '\'' && i + 1 < text.size() &&
                   IsWordByte(byte(i + 1))) {
          i += 2;
        } else {
          break;
        }
      }
    } else {
      ++i;
      tok.is_punct = true;
      tok.is_stopword = true;
    }
    tok.end = i;
    tok.surface = std::string(text.substr(tok.begin, tok.end - tok.begin));
    input.tokens.push_back(std::move(tok));
  }

  input.prompt_len = static_cast<std::size_t>(std::count_if(
      input.tokens.begin(), input.tokens.end(),
      [&](const Token& t) { return t.begin < prompt_bytes; }));
  return input;
}

std::string TokenizedInput::Detokenize() const {
  return Rebuild(*this, [](std::string& out, std::size_t, const Token& t) {
    out += t.surface;
  });
}

std::string TokenizedInput::Render(std::span<const Substitution> subs) const {
  const auto by_pos = IndexSubs(*this, subs);
  return Rebuild(*this, [&](std::string& out, std::size_t i, const Token& t) {
    out += by_pos[i] ? by_pos[i]->replacement : t.surface;
  });
}

std::string TokenizedInput::RenderWithout(
    std::size_t position, std::span<const Substitution> subs) const {
  if (position >= tokens.size()) {
    throw std::out_of_range("deletion position out of range");
  }
  const auto by_pos = IndexSubs(*this, subs);
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (i == position) {
      out.append(source, cursor, t.begin - cursor);
      // Skip the token and the separator that follows it.
      cursor = i + 1 < tokens.size() ? tokens[i + 1].begin : source.size();
      continue;
    }
    out.append(source, cursor, t.begin - cursor);
    out += by_pos[i] ? by_pos[i]->replacement : t.surface;
    cursor = t.end;
  }
  out.append(source, cursor, std::string::npos);
  return out;
}

std::size_t TokenizedInput::PerturbableCount() const {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(),
      [](const Token& t) { return t.perturbable(); }));
}

}  // namespace abfs::lexicon
