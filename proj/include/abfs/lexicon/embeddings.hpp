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

#ifndef ABFS_LEXICON_EMBEDDINGS_HPP_
#define ABFS_LEXICON_EMBEDDINGS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abfs/errors.hpp"

namespace abfs::lexicon {

// dot(a, b) / (|a| |b|). Throws SimilarityUndefined if either vector is all
// zeros and std::invalid_argument on a dimension mismatch.
template <typename T>
double Cosine(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine of vectors with different dimensions");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) throw SimilarityUndefined();
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

inline double Cosine(std::span<const double> a, std::span<const double> b) {
  return Cosine<double>(a, b);
}

// Dense word vectors of one fixed dimension.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  // Returns false (and stores nothing) when `word` is already present.
  // Throws std::invalid_argument for a wrong length or non-finite value.
  bool Add(std::string word, std::span<const float> values);

  std::optional<std::span<const float>> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }

  // Similarity of two stored words; nullopt if either is missing or zero.
  std::optional<double> Similarity(std::string_view a, std::string_view b) const;

  // The k most similar stored words to `word` (excluding itself), best first,
  // ties broken by word. Empty when `word` is not stored.
  std::vector<std::pair<std::string, double>> Nearest(std::string_view word,
                                                      std::size_t k) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  std::size_t malformed_rows() const { return malformed_rows_; }
  void set_malformed_rows(std::size_t n) { malformed_rows_ = n; }

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t malformed_rows_ = 0;
};

// Text format, one "word f1 ... fd" record per line. The dimension comes from
// the first well-formed row; a word2vec-style "count dim" header is skipped.
// Rows whose values do not parse as finite numbers are skipped and counted.
// A row with the wrong number of values throws EmbeddingParseError.
EmbeddingTable LoadEmbeddings(const std::filesystem::path& path);

}  // namespace abfs::lexicon

#endif  // ABFS_LEXICON_EMBEDDINGS_HPP_
