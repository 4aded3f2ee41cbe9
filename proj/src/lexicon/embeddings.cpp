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

#include "abfs/lexicon/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>

namespace abfs::lexicon {
namespace {

std::vector<std::string_view> Fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  const auto space = [](char c) { return c == ' ' || c == '\t'; };
  while (i < line.size()) {
    while (i < line.size() && space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseFloat(std::string_view s, float& out) {
  // from_chars for floating point is not available on every libstdc++ we
  // target; strtof on a bounded copy is.
  std::string tmp(s);
  char* end = nullptr;
  out = std::strtof(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size() && !tmp.empty() && std::isfinite(out);
}

bool IsCount(std::string_view s) {
  std::size_t v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be > 0");
}

bool EmbeddingTable::Add(std::string word, std::span<const float> values) {
  if (values.size() != dim_) {
    throw std::invalid_argument("embedding for '" + word + "' has " +
                                std::to_string(values.size()) +
                                " components, expected " +
                                std::to_string(dim_));
  }
  if (!std::all_of(values.begin(), values.end(),
                   [](float v) { return std::isfinite(v); })) {
    throw std::invalid_argument("embedding for '" + word +
                                "' has a non-finite component");
  }
  if (index_.contains(word)) return false;
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingTable::Find(
    std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(data_.data() + it->second * dim_, dim_);
}

std::optional<double> EmbeddingTable::Similarity(std::string_view a,
                                                 std::string_view b) const {
  auto va = Find(a);
  auto vb = Find(b);
  if (!va || !vb) return std::nullopt;
  try {
    return Cosine<float>(*va, *vb);
  } catch (const SimilarityUndefined&) {
    return std::nullopt;
  }
}

std::vector<std::pair<std::string, double>> EmbeddingTable::Nearest(
    std::string_view word, std::size_t k) const {
  std::vector<std::pair<std::string, double>> out;
  auto query = Find(word);
  if (!query || k == 0) return out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] == word) continue;
    std::span<const float> v(data_.data() + i * dim_, dim_);
    try {
      out.emplace_back(words_[i], Cosine<float>(*query, v));
    } catch (const SimilarityUndefined&) {
    }
  }
  const auto better = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  if (out.size() > k) {
    std::partial_sort(out.begin(), out.begin() + static_cast<long>(k),
                      out.end(), better);
    out.resize(k);
  } else {
    std::sort(out.begin(), out.end(), better);
  }
  return out;
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmbeddingParseError(path.string(), 0, "cannot open file");

  std::optional<EmbeddingTable> table;
  std::size_t malformed = 0;
  std::size_t line_no = 0;
  std::string line;
  std::vector<float> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto f = Fields(line);
    if (f.empty()) continue;
    if (!table && line_no == 1 && f.size() == 2 && IsCount(f[0]) &&
        IsCount(f[1])) {
      continue;  // word2vec header
    }
    if (f.size() < 2) {
      ++malformed;
      continue;
    }
    values.clear();
    bool ok = true;
    for (std::size_t i = 1; i < f.size() && ok; ++i) {
      float v;
      ok = ParseFloat(f[i], v);
      values.push_back(v);
    }
    if (!ok) {
      ++malformed;
      continue;
    }
    if (!table) table.emplace(values.size());
    if (values.size() != table->dim()) {
      throw EmbeddingParseError(
          path.string(), line_no,
          "row has " + std::to_string(values.size()) + " values, expected " +
              std::to_string(table->dim()));
    }
    table->Add(std::string(f[0]), values);
  }
  if (!table) {
    throw EmbeddingParseError(path.string(), line_no, "no embedding rows");
  }
  table->set_malformed_rows(malformed);
  return std::move(*table);
}

}  // namespace abfs::lexicon
