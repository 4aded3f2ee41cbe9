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

// Perplexity scoring. The built-in scorer is an add-k smoothed n-gram model;
// an HTTP scorer lets an external language model stand in for it.

#ifndef ABFS_METRICS_NGRAM_HPP_
#define ABFS_METRICS_NGRAM_HPP_

#include <chrono>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace abfs::metrics {

inline constexpr char kUnknownToken[] = "<unk>";
inline constexpr char kStartToken[] = "<s>";

// Returned by perplexity when some token has probability zero.
inline constexpr double kInfinitePerplexity =
    std::numeric_limits<double>::infinity();

using TokenSequence = std::vector<std::string>;

class PerplexityScorer {
 public:
  virtual ~PerplexityScorer() = default;
  virtual double Perplexity(std::string_view text) const = 0;
};

class NGramModel final : public PerplexityScorer {
 public:
  // Trains on `corpus`. Each sequence is left-padded with order - 1 start
  // tokens. The vocabulary is every corpus token plus <unk>; tokens outside it
  // are read as <unk>. Throws EmptyCorpus when no sequence has a token.
  static NGramModel Train(const std::vector<TokenSequence>& corpus,
                          std::size_t order, double smoothing = 1.0);

  // (count(context, token) + k) / (count(context) + k * |V|). Zero when the
  // context was never seen and k == 0.
  double Probability(std::span<const std::string> context,
                     std::string_view token) const;

  // exp(-mean log p(w_i | w_<i)), or kInfinitePerplexity if a probability is
  // zero. An empty sequence scores 1.
  double SequencePerplexity(const TokenSequence& tokens) const;

  // Lowercased word tokens of `text`, punctuation dropped.
  double Perplexity(std::string_view text) const override;

  std::size_t order() const { return order_; }
  double smoothing() const { return smoothing_; }
  // Includes <unk>.
  std::size_t vocabulary_size() const { return vocab_.size() + 1; }
  const std::unordered_set<std::string>& vocabulary() const { return vocab_; }

 private:
  NGramModel(std::size_t order, double smoothing)
      : order_(order), smoothing_(smoothing) {}

  std::string ContextKey(std::span<const std::string> context) const;
  const std::string& Canonical(const std::string& token) const;

  std::size_t order_;
  double smoothing_;
  std::unordered_set<std::string> vocab_;  // without <unk>
  std::unordered_map<std::string, std::unordered_map<std::string, double>>
      counts_;
  std::unordered_map<std::string, double> context_totals_;
};

// Splits text the way NGramModel::Perplexity does.
TokenSequence LmTokens(std::string_view text);

// Posts {"text": ...} and expects {"ppl": number}.
class HttpPerplexityScorer final : public PerplexityScorer {
 public:
  HttpPerplexityScorer(std::string endpoint,
                       std::chrono::milliseconds timeout = std::chrono::seconds(30),
                       std::string auth_env = "ABFS_AUTH_TOKEN");

  double Perplexity(std::string_view text) const override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::string auth_env_;
};

}  // namespace abfs::metrics

#endif  // ABFS_METRICS_NGRAM_HPP_
