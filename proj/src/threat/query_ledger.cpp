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

#include "abfs/threat/query_ledger.hpp"

#include <stdexcept>

#include "abfs/errors.hpp"

namespace abfs::threat {

QueryLedger::QueryLedger(const Classifier& backend, std::size_t max_query)
    : backend_(backend), max_query_(max_query) {
  if (max_query == 0) throw ConfigError("max_query must be positive");
}

ThreatVerdict QueryLedger::Classify(std::string_view input) {
  if (input.empty()) throw std::invalid_argument("classify of empty input");
  std::lock_guard lock(mu_);
  std::string key(input);
  if (auto it = cache_.find(key); it != cache_.end()) {
    ++cache_hits_;
    return it->second;
  }
  if (used_ >= max_query_) throw BudgetExhausted(max_query_);
  // The lock is held across the call: a ledger serves one search, and this
  // keeps "used" equal to the number of distinct texts forwarded.
  ThreatVerdict verdict = backend_.Classify(input);
  ++used_;
  cache_.emplace(std::move(key), verdict);
  return verdict;
}

std::optional<ThreatVerdict> QueryLedger::Peek(std::string_view input) const {
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(std::string(input)); it != cache_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::size_t QueryLedger::used() const {
  std::lock_guard lock(mu_);
  return used_;
}

std::size_t QueryLedger::cache_hits() const {
  std::lock_guard lock(mu_);
  return cache_hits_;
}

std::size_t QueryLedger::remaining() const {
  std::lock_guard lock(mu_);
  return max_query_ - used_;
}

MemoizingClassifier::MemoizingClassifier(ClassifierPtr backend)
    : backend_(std::move(backend)) {
  if (!backend_) throw std::invalid_argument("null backend");
}

ThreatVerdict MemoizingClassifier::Classify(std::string_view input) const {
  std::string key(input);
  std::promise<ThreatVerdict> promise;
  std::shared_future<ThreatVerdict> pending;
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      pending = it->second;
    } else {
      memo_.emplace(key, promise.get_future().share());
    }
  }
  // Someone else owns the backend call for this text; wait for it.
  if (pending.valid()) return pending.get();

  try {
    ThreatVerdict v = backend_->Classify(input);
    backend_calls_.fetch_add(1);
    promise.set_value(v);
    return v;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mu_);
    memo_.erase(key);
    throw;
  }
}

ThreatVerdict CountingClassifier::Classify(std::string_view input) const {
  {
    std::lock_guard lock(mu_);
    ++calls_[std::string(input)];
  }
  return backend_->Classify(input);
}

std::size_t CountingClassifier::total_calls() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& [text, count] : calls_) n += count;
  return n;
}

std::size_t CountingClassifier::distinct_inputs() const {
  std::lock_guard lock(mu_);
  return calls_.size();
}

std::vector<std::string> CountingClassifier::Duplicates() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [text, count] : calls_) {
    if (count > 1) out.push_back(text);
  }
  return out;
}

}  // namespace abfs::threat
