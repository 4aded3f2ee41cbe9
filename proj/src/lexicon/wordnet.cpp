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

#include "abfs/lexicon/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "abfs/errors.hpp"

namespace abfs::lexicon {
namespace {

struct Detachment {
  std::string_view suffix;
  std::string_view ending;
};

constexpr Detachment kNounRules[] = {
    {"s", ""},     {"ses", "s"},   {"xes", "x"},   {"zes", "z"},
    {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
};
constexpr Detachment kVerbRules[] = {
    {"s", ""},   {"ies", "y"}, {"es", "e"},   {"es", ""},
    {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""},
};
constexpr Detachment kAdjRules[] = {
    {"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"},
};

std::span<const Detachment> RulesFor(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return kNounRules;
    case Pos::kVerb:
      return kVerbRules;
    case Pos::kAdj:
      return kAdjRules;
    default:
      return {};
  }
}

struct PosFile {
  Pos pos;
  std::string_view suffix;
  char index_tag;
};

constexpr PosFile kPosFiles[] = {
    {Pos::kNoun, "noun", 'n'},
    {Pos::kVerb, "verb", 'v'},
    {Pos::kAdj, "adj", 'a'},
    {Pos::kAdv, "adv", 'r'},
};

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::filesystem::path path) : path_(std::move(path)) {
    in_.open(path_);
    if (!in_) Fail(0, "cannot open file");
  }

  bool Next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      // License preamble lines start with two spaces.
      if (line.empty() || line.starts_with("  ")) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(std::size_t line, const std::string& what) const {
    throw LexiconParseError(path_.string(), line, what);
  }
  [[noreturn]] void Fail(const std::string& what) const {
    Fail(line_no_, what);
  }

  template <typename T>
  T Number(std::string_view field, int base = 10) const {
    T value{};
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value, base);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      Fail("expected a number, got '" + std::string(field) + "'");
    }
    return value;
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

std::string NormalizeLemma(std::string_view word) {
  // Adjective syntactic markers: "galore(ip)", "elect(p)".
  if (!word.empty() && word.back() == ')') {
    std::size_t open = word.rfind('(');
    if (open != std::string_view::npos && open > 0) word = word.substr(0, open);
  }
  return ToLower(word);
}

}  // namespace

std::string SynsetLexicon::Key(std::string_view lemma, Pos pos) {
  std::string key = ToLower(lemma);
  key.push_back('\t');
  key.push_back(static_cast<char>('0' + static_cast<int>(pos)));
  return key;
}

SynsetId SynsetLexicon::AddSynset(Pos pos, std::vector<std::string> lemmas) {
  const SynsetId id = synsets_.size();
  for (std::string& l : lemmas) l = ToLower(l);
  for (const std::string& l : lemmas) {
    auto& senses = index_[Key(l, pos)];
    if (std::find(senses.begin(), senses.end(), id) == senses.end()) {
      senses.push_back(id);
    }
  }
  synsets_.push_back(Synset{pos, std::move(lemmas), {}});
  vocabulary_ = std::make_shared<VocabularyCache>();
  return id;
}

void SynsetLexicon::AddSimilar(SynsetId from, SynsetId to) {
  auto& links = synsets_.at(from).similar;
  if (std::find(links.begin(), links.end(), to) == links.end()) {
    links.push_back(to);
  }
}

void SynsetLexicon::SetSenses(std::string_view lemma, Pos pos,
                              std::vector<SynsetId> ids) {
  index_[Key(lemma, pos)] = std::move(ids);
}

void SynsetLexicon::AddException(Pos pos, std::string_view inflected,
                                 std::string_view base) {
  exceptions_.emplace(Key(inflected, pos), ToLower(base));
}

bool SynsetLexicon::Contains(std::string_view lemma, Pos pos) const {
  return index_.contains(Key(lemma, pos));
}

std::span<const SynsetId> SynsetLexicon::Senses(std::string_view lemma,
                                                Pos pos) const {
  auto it = index_.find(Key(lemma, pos));
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<std::vector<std::string>> SynsetLexicon::SynonymGroups(
    std::string_view lemma, Pos pos) const {
  std::vector<std::vector<std::string>> groups;
  const auto senses = Senses(lemma, pos);
  for (SynsetId id : senses) groups.push_back(synsets_[id].lemmas);
  if (pos == Pos::kAdj) {
    std::set<SynsetId> seen(senses.begin(), senses.end());
    for (SynsetId id : senses) {
      for (SynsetId link : synsets_[id].similar) {
        if (seen.insert(link).second) groups.push_back(synsets_[link].lemmas);
      }
    }
  }
  return groups;
}

std::vector<std::string> SynsetLexicon::Synonyms(std::string_view lemma,
                                                 Pos pos) const {
  const std::string self = ToLower(lemma);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen{self};
  for (auto& group : SynonymGroups(lemma, pos)) {
    for (auto& l : group) {
      if (seen.insert(l).second) out.push_back(l);
    }
  }
  return out;
}

std::string SynsetLexicon::BaseForm(std::string_view word, Pos pos) const {
  const std::string lower = ToLower(word);
  if (auto it = exceptions_.find(Key(lower, pos)); it != exceptions_.end()) {
    if (Contains(it->second, pos)) return it->second;
  }
  if (Contains(lower, pos)) return lower;
  for (const Detachment& rule : RulesFor(pos)) {
    if (lower.size() <= rule.suffix.size() ||
        !std::string_view(lower).ends_with(rule.suffix)) {
      continue;
    }
    std::string base = lower.substr(0, lower.size() - rule.suffix.size());
    base += rule.ending;
    if (Contains(base, pos)) return base;
  }
  return {};
}

const std::vector<std::string>& SynsetLexicon::Vocabulary() const {
  VocabularyCache& cache = *vocabulary_;
  std::call_once(cache.once, [&] {
    std::set<std::string> words;
    for (const Synset& s : synsets_) {
      for (const std::string& l : s.lemmas) {
        if (l.find('_') == std::string::npos) words.insert(l);
      }
    }
    cache.words.assign(words.begin(), words.end());
  });
  return cache.words;
}

SynsetLexicon LoadWordNet(const std::filesystem::path& dir) {
  SynsetLexicon lex;
  std::string line;

  for (const PosFile& pf : kPosFiles) {
    // Offsets are only unique within one data file.
    std::unordered_map<std::uint64_t, SynsetId> by_offset;
    std::vector<std::pair<SynsetId, std::uint64_t>> similar_links;

    LineReader data(dir / ("data." + std::string(pf.suffix)));
    while (data.Next(line)) {
      const std::string_view body =
          std::string_view(line).substr(0, line.find('|'));
      const auto f = SplitFields(body);
      if (f.size() < 6) data.Fail("truncated synset record");
      const auto offset = data.Number<std::uint64_t>(f[0]);
      const std::string_view ss_type = f[2];
      const bool type_ok =
          ss_type.size() == 1 &&
          (ss_type[0] == pf.index_tag || (pf.pos == Pos::kAdj && ss_type == "s"));
      if (!type_ok) {
        data.Fail("synset type '" + std::string(ss_type) +
                  "' does not belong in this file");
      }
      const auto w_cnt = data.Number<std::size_t>(f[3], 16);
      std::size_t at = 4;
      if (w_cnt == 0 || f.size() < at + 2 * w_cnt + 1) {
        data.Fail("bad word count");
      }
      std::vector<std::string> lemmas;
      for (std::size_t w = 0; w < w_cnt; ++w, at += 2) {
        lemmas.push_back(NormalizeLemma(f[at]));
      }
      const auto p_cnt = data.Number<std::size_t>(f[at++]);
      if (f.size() < at + 4 * p_cnt) data.Fail("bad pointer count");
      const SynsetId id = lex.AddSynset(pf.pos, std::move(lemmas));
      if (!by_offset.emplace(offset, id).second) {
        data.Fail("duplicate synset offset");
      }
      for (std::size_t p = 0; p < p_cnt; ++p, at += 4) {
        if (pf.pos == Pos::kAdj && f[at] == "&") {
          similar_links.emplace_back(id, data.Number<std::uint64_t>(f[at + 1]));
        }
      }
    }
    for (auto [from, offset] : similar_links) {
      // Pruned databases may point at synsets that were dropped.
      if (auto it = by_offset.find(offset); it != by_offset.end()) {
        lex.AddSimilar(from, it->second);
      }
    }

    LineReader index(dir / ("index." + std::string(pf.suffix)));
    while (index.Next(line)) {
      const auto f = SplitFields(line);
      if (f.size() < 6) index.Fail("truncated index record");
      if (f[1].size() != 1 || f[1][0] != pf.index_tag) {
        index.Fail("part of speech '" + std::string(f[1]) +
                   "' does not belong in this file");
      }
      const auto synset_cnt = index.Number<std::size_t>(f[2]);
      const auto p_cnt = index.Number<std::size_t>(f[3]);
      const std::size_t first_offset = 4 + p_cnt + 2;
      if (f.size() != first_offset + synset_cnt) {
        index.Fail("field count does not match synset_cnt/p_cnt");
      }
      std::vector<SynsetId> ids;
      for (std::size_t s = 0; s < synset_cnt; ++s) {
        const auto offset = index.Number<std::uint64_t>(f[first_offset + s]);
        auto it = by_offset.find(offset);
        if (it == by_offset.end()) {
          index.Fail("synset offset " + std::string(f[first_offset + s]) +
                     " not present in data file");
        }
        ids.push_back(it->second);
      }
      lex.SetSenses(f[0], pf.pos, std::move(ids));
    }

    const auto exc_path = dir / (std::string(pf.suffix) + ".exc");
    if (std::filesystem::exists(exc_path)) {
      LineReader exc(exc_path);
      while (exc.Next(line)) {
        const auto f = SplitFields(line);
        if (f.size() < 2) exc.Fail("exception entry needs a base form");
        lex.AddException(pf.pos, f[0], f[1]);
      }
    }
  }
  return lex;
}

}  // namespace abfs::lexicon
