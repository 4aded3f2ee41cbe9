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

// Budget accounting and caching in front of a classifier.
//
// A QueryLedger is scoped to one search: it counts every distinct input it
// forwards (the query number of that search) and refuses the call that would
// go over budget. A MemoizingClassifier is scoped to a campaign: it makes
// sure one input text reaches the real backend at most once, no matter how
// many searches ask for it or from which thread.

#ifndef ABFS_THREAT_QUERY_LEDGER_HPP_
#define ABFS_THREAT_QUERY_LEDGER_HPP_

#include <atomic>
#include <cstddef>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abfs/threat/classifier.hpp"

namespace abfs::threat {

class QueryLedger {
 public:
  // `backend` must outlive the ledger. max_query must be positive.
  QueryLedger(const Classifier& backend, std::size_t max_query);

  // Cached verdict if `input` was seen before (cache_hits + 1); otherwise one
  // backend call (used + 1). Throws BudgetExhausted before the call when
  // used == max_query. A backend exception leaves the counters unchanged.
  ThreatVerdict Classify(std::string_view input);

  // Cache lookup that touches no counter.
  std::optional<ThreatVerdict> Peek(std::string_view input) const;

  std::size_t used() const;
  std::size_t cache_hits() const;
  std::size_t max_query() const { return max_query_; }
  std::size_t remaining() const;
  bool exhausted() const { return remaining() == 0; }

  const std::vector<std::string>& labels() const { return backend_.labels(); }

 private:
  const Classifier& backend_;
  const std::size_t max_query_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, ThreatVerdict> cache_;
  std::size_t used_ = 0;
  std::size_t cache_hits_ = 0;
};

// Thread-safe memo over a classifier. Concurrent requests for the same text
// share one backend call.
class MemoizingClassifier final : public Classifier {
 public:
  explicit MemoizingClassifier(ClassifierPtr backend);

  ThreatVerdict Classify(std::string_view input) const override;
  const std::vector<std::string>& labels() const override {
    return backend_->labels();
  }

  std::size_t backend_calls() const { return backend_calls_.load(); }

 private:
  ClassifierPtr backend_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::shared_future<ThreatVerdict>>
      memo_;
  mutable std::atomic<std::size_t> backend_calls_{0};
};

// Records how often each distinct text reached it. Used to audit the
// no-duplicate-call guarantee.
class CountingClassifier final : public Classifier {
 public:
  explicit CountingClassifier(ClassifierPtr backend)
      : backend_(std::move(backend)) {}

  ThreatVerdict Classify(std::string_view input) const override;
  const std::vector<std::string>& labels() const override {
    return backend_->labels();
  }

  std::size_t total_calls() const;
  std::size_t distinct_inputs() const;
  // Texts that were forwarded more than once.
  std::vector<std::string> Duplicates() const;

 private:
  ClassifierPtr backend_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::size_t> calls_;
};

}  // namespace abfs::threat

#endif  // ABFS_THREAT_QUERY_LEDGER_HPP_
