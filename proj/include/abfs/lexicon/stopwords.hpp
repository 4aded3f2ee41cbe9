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

#ifndef ABFS_LEXICON_STOPWORDS_HPP_
#define ABFS_LEXICON_STOPWORDS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace abfs::lexicon {

class StopWordSet {
 public:
  StopWordSet() = default;
  explicit StopWordSet(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  // Bundled English function-word list.
  static StopWordSet English();

  // One word per line, UTF-8. Blank lines and lines starting with '#' are
  // ignored; entries are lowercased.
  static StopWordSet Load(const std::filesystem::path& path);

  bool Contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_STOPWORDS_HPP_
