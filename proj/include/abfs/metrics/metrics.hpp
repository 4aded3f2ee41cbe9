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

// Campaign indicators: success rate, change rate, perplexity, time per
// success and queries per success, plus transfer to a second model.

#ifndef ABFS_METRICS_METRICS_HPP_
#define ABFS_METRICS_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "abfs/threat/classifier.hpp"

namespace abfs::metrics {

// What the metrics need to know about one searched example.
struct OutcomeSummary {
  bool success = false;
  bool skipped = false;
  double change_rate = 0;  // percent
  std::optional<double> ppl;  // of the final text, when scored
  double wall_seconds = 0;
  std::size_t queries = 0;
};

// Every mean is std::nullopt when it has nothing to average over.
struct CampaignStats {
  std::size_t n = 0;
  std::size_t n_suc = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
  std::optional<double> s_rate;              // n_suc / n
  std::optional<double> s_rate_conditional;  // n_suc / (n - skipped)
  std::optional<double> c_rate;              // over successes
  std::optional<double> ppl;                 // over successes, finite only
  std::optional<double> t_o;                 // seconds per success
  std::optional<double> q_n;                 // queries per success
};

// n_suc / n * 100, or nullopt when n == 0.
std::optional<double> SuccessRate(std::size_t n_suc, std::size_t n);

// edits / tokens * 100. Zero tokens gives 0.
double ChangeRate(std::size_t edits, std::size_t tokens);

std::optional<double> Mean(std::span<const double> values);

struct Efficiency {
  std::optional<double> t_o;
  std::optional<double> q_n;
};

// Means over successful outcomes only.
Efficiency EfficiencyStats(std::span<const OutcomeSummary> outcomes);

CampaignStats Aggregate(std::span<const OutcomeSummary> outcomes);

// Field-wise mean of per-repeat stats. Counts are summed.
CampaignStats MeanOfRepeats(std::span<const CampaignStats> repeats);

// A case that fooled the source model.
struct TransferCase {
  std::string text;
  std::string ground_truth;
};

// Percentage of cases the other model also gets wrong; nullopt for no cases.
std::optional<double> TransferEvaluate(std::span<const TransferCase> cases,
                                       const threat::Classifier& other);

// "98.064"-style rendering with three decimals; "—" for nullopt.
std::string FormatMetric(const std::optional<double>& value);

void to_json(nlohmann::json& j, const CampaignStats& s);
void from_json(const nlohmann::json& j, CampaignStats& s);

}  // namespace abfs::metrics

#endif  // ABFS_METRICS_METRICS_HPP_
