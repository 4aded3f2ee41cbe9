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

#include "abfs/lexicon/stopwords.hpp"

#include <fstream>

#include "abfs/errors.hpp"
#include "abfs/lexicon/tokenizer.hpp"

namespace abfs::lexicon {
namespace {

constexpr std::string_view kEnglish[] = {
    "a",          "about",   "above",    "after",   "again",   "against",
    "ain",        "all",     "am",       "an",      "and",     "any",
    "are",        "aren",    "aren't",   "as",      "at",      "be",
    "because",    "been",    "before",   "being",   "below",   "between",
    "both",       "but",     "by",       "can",     "couldn",  "couldn't",
    "d",          "did",     "didn",     "didn't",  "do",      "does",
    "doesn",      "doesn't", "doing",    "don",     "don't",   "down",
    "during",     "each",    "few",      "for",     "from",    "further",
    "had",        "hadn",    "hadn't",   "has",     "hasn",    "hasn't",
    "have",       "haven",   "haven't",  "having",  "he",      "her",
    "here",       "hers",    "herself",  "him",     "himself", "his",
    "how",        "i",       "if",       "in",      "into",    "is",
    "isn",        "isn't",   "it",       "it's",    "its",     "itself",
    "just",       "ll",      "m",        "ma",      "me",      "mightn",
    "mightn't",   "more",    "most",     "mustn",   "mustn't", "my",
    "myself",     "needn",   "needn't",  "no",      "nor",     "not",
    "now",        "o",       "of",       "off",     "on",      "once",
    "only",       "or",      "other",    "our",     "ours",    "ourselves",
    "out",        "over",    "own",      "re",      "s",       "same",
    "shan",       "shan't",  "she",      "she's",   "should",  "should've",
    "shouldn",    "shouldn't", "so",     "some",    "such",    "t",
    "than",       "that",    "that'll",  "the",     "their",   "theirs",
    "them",       "themselves", "then",  "there",   "these",   "they",
    "this",       "those",   "through",  "to",      "too",     "under",
    "until",      "up",      "ve",       "very",    "was",     "wasn",
    "wasn't",     "we",      "were",     "weren",   "weren't", "what",
    "when",       "where",   "which",    "while",   "who",     "whom",
    "why",        "will",    "with",     "won",     "won't",   "wouldn",
    "wouldn't",   "y",       "you",      "you'd",   "you'll",  "you're",
    "you've",     "your",    "yours",    "yourself", "yourselves",
};

}  // namespace

StopWordSet StopWordSet::English() {
  std::unordered_set<std::string> words;
  for (std::string_view w : kEnglish) words.emplace(w);
  return StopWordSet(std::move(words));
}

StopWordSet StopWordSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open stop-word list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    words.insert(ToLower(std::string_view(line).substr(start)));
  }
  return StopWordSet(std::move(words));
}

bool StopWordSet::Contains(std::string_view word) const {
  return words_.contains(ToLower(word));
}

}  // namespace abfs::lexicon
