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

#include "abfs/metrics/ngram.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "abfs/common/http.hpp"
#include "abfs/errors.hpp"
#include "abfs/lexicon/tokenizer.hpp"

namespace abfs::metrics {

TokenSequence LmTokens(std::string_view text) {
  TokenSequence out;
  if (text.empty()) return out;
  for (const auto& tok : lexicon::Tokenize(text).tokens) {
    if (!tok.is_punct) out.push_back(lexicon::ToLower(tok.surface));
  }
  return out;
}

NGramModel NGramModel::Train(const std::vector<TokenSequence>& corpus,
                             std::size_t order, double smoothing) {
  if (order == 0) throw std::invalid_argument("n-gram order must be >= 1");
  if (!(smoothing >= 0) || !std::isfinite(smoothing)) {
    throw std::invalid_argument("smoothing must be a finite k >= 0");
  }
  NGramModel model(order, smoothing);
  for (const auto& seq : corpus) {
    for (const auto& tok : seq) model.vocab_.insert(tok);
  }
  if (model.vocab_.empty()) throw EmptyCorpus();

  for (const auto& seq : corpus) {
    TokenSequence padded(order - 1, kStartToken);
    padded.insert(padded.end(), seq.begin(), seq.end());
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      const std::string key = model.ContextKey(
          std::span<const std::string>(padded).subspan(i + 1 - order,
                                                       order - 1));
      model.counts_[key][padded[i]] += 1;
      model.context_totals_[key] += 1;
    }
  }
  return model;
}

std::string NGramModel::ContextKey(std::span<const std::string> context) const {
  std::string key;
  for (const auto& t : context) {
    key += Canonical(t);
    key.push_back('\x1f');
  }
  return key;
}

const std::string& NGramModel::Canonical(const std::string& token) const {
  static const std::string kStart = kStartToken;
  static const std::string kUnk = kUnknownToken;
  if (token == kStart || vocab_.contains(token)) return token;
  return kUnk;
}

double NGramModel::Probability(std::span<const std::string> context,
                               std::string_view token) const {
  if (context.size() != order_ - 1) {
    throw std::invalid_argument("context length must be order - 1");
  }
  const std::string key = ContextKey(context);
  const std::string& word = Canonical(std::string(token));
  double count = 0;
  double total = 0;
  if (auto it = counts_.find(key); it != counts_.end()) {
    total = context_totals_.at(key);
    if (auto w = it->second.find(word); w != it->second.end()) count = w->second;
  }
  const double denom =
      total + smoothing_ * static_cast<double>(vocabulary_size());
  if (denom == 0) return 0;
  return (count + smoothing_) / denom;
}

double NGramModel::SequencePerplexity(const TokenSequence& tokens) const {
  if (tokens.empty()) return 1.0;
  TokenSequence padded(order_ - 1, kStartToken);
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  double log_sum = 0;
  for (std::size_t i = order_ - 1; i < padded.size(); ++i) {
    const double p = Probability(
        std::span<const std::string>(padded).subspan(i + 1 - order_,
                                                     order_ - 1),
        padded[i]);
    if (p <= 0) return kInfinitePerplexity;
    log_sum += std::log(p);
  }
  return std::exp(-log_sum / static_cast<double>(tokens.size()));
}

double NGramModel::Perplexity(std::string_view text) const {
  return SequencePerplexity(LmTokens(text));
}

HttpPerplexityScorer::HttpPerplexityScorer(std::string endpoint,
                                           std::chrono::milliseconds timeout,
                                           std::string auth_env)
    : endpoint_(std::move(endpoint)),
      timeout_(timeout),
      auth_env_(std::move(auth_env)) {
  ParseEndpoint(endpoint_);
}

double HttpPerplexityScorer::Perplexity(std::string_view text) const {
  const nlohmann::json request = {{"text", std::string(text)}};
  HttpResult res = PostJson(ParseEndpoint(endpoint_), request.dump(), timeout_,
                            TokenFromEnv(auth_env_));
  if (!res.error.empty() || !res.ok()) {
    throw BackendError(res.error.empty() ? "HTTP status " +
                                               std::to_string(res.status)
                                         : res.error,
                       res.body);
  }
  auto j = nlohmann::json::parse(res.body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("ppl") ||
      !j["ppl"].is_number()) {
    throw BackendError("perplexity response lacks a numeric 'ppl'", res.body);
  }
  return j["ppl"].get<double>();
}

}  // namespace abfs::metrics
